//! Structural JSON Schema checker for the report schemas.
//!
//! Supports the subset the schema files use: $ref into definitions, oneOf,
//! type, enum, required, properties, items.  Unknown keywords (title,
//! description, pattern) are ignored.

use serde_json::Value;

pub fn validate(schema_doc: &Value, instance: &Value) -> Result<(), Vec<String>> {
    let defs = schema_doc.get("definitions").cloned().unwrap_or(Value::Null);
    let mut errors = Vec::new();
    validate_at(schema_doc, instance, &defs, "$", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                "integer"
            } else {
                "number"
            }
        }
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn type_matches(allowed: &str, v: &Value) -> bool {
    let got = type_name(v);
    allowed == got || (allowed == "number" && got == "integer")
}

fn validate_at(schema: &Value, doc: &Value, defs: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/definitions/");
        match defs.get(name) {
            Some(target) => validate_at(target, doc, defs, path, errors),
            None => errors.push(format!("{}: unresolved $ref {}", path, r)),
        }
        return;
    }

    if let Some(branches) = schema.get("oneOf").and_then(Value::as_array) {
        let matched = branches.iter().any(|b| {
            let mut branch_errors = Vec::new();
            validate_at(b, doc, defs, path, &mut branch_errors);
            branch_errors.is_empty()
        });
        if !matched {
            errors.push(format!("{}: no oneOf branch matched", path));
        }
        return;
    }

    match schema.get("type") {
        Some(Value::String(t)) => {
            if !type_matches(t, doc) {
                errors.push(format!("{}: expected {}, got {}", path, t, type_name(doc)));
                return;
            }
        }
        Some(Value::Array(ts)) => {
            if !ts.iter().filter_map(Value::as_str).any(|t| type_matches(t, doc)) {
                errors.push(format!("{}: type {} not allowed", path, type_name(doc)));
                return;
            }
        }
        _ => {}
    }

    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(doc) {
            errors.push(format!("{}: value {} not in enum", path, doc));
            return;
        }
    }

    if let Value::Object(map) = doc {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{}: missing required key {}", path, key));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = map.get(key) {
                    validate_at(sub, v, defs, &format!("{}.{}", path, key), errors);
                }
            }
        }
    }

    if let (Value::Array(entries), Some(items)) = (doc, schema.get("items")) {
        for (i, v) in entries.iter().enumerate() {
            validate_at(items, v, defs, &format!("{}[{}]", path, i), errors);
        }
    }
}
