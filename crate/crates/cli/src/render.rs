use serde_json::Value;

use crate::Output;

pub fn render(value: &Value, output: Output) -> String {
    match output {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("values serialize")),
        Output::Table => {
            let mut out = String::new();
            table(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn simple(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn table(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                if simple(v) {
                    let fill = " ".repeat(width - k.chars().count());
                    out.push_str(&format!("{pad}{k}{fill}  {}\n", scalar(v)));
                } else {
                    out.push_str(&format!("{pad}{k}\n"));
                    table(v, indent + 2, out);
                }
            }
        }
        Value::Array(items) if !simple(value) => {
            for (n, v) in items.iter().enumerate() {
                if simple(v) {
                    out.push_str(&format!("{pad}{n}  {}\n", scalar(v)));
                } else {
                    out.push_str(&format!("{pad}[{n}]\n"));
                    table(v, indent + 2, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligns_keys() {
        let v = json!({"0": 1, "10": 2, "rows": [1, 2]});
        assert_eq!(render(&v, Output::Table), "0     1\n10    2\nrows  1 2\n");
    }

    #[test]
    fn nests_objects() {
        let v = json!({"a": {"b": true}, "c": [{"d": 1}]});
        assert_eq!(render(&v, Output::Table), "a\n  b  true\nc\n  [0]\n    d  1\n");
    }
}
