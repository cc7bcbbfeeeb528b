use serde::Serialize;
use serde_json::{json, Value};
use serialsum::CNum;

/// Machine-readable result of one command. Field order is the key order; the
/// maps inside `inputs` and `result` serialize with sorted keys.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub err_estimate: f64,
    pub elapsed_ms: f64,
}

pub fn complex(z: CNum) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_vec(zs: &[CNum]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

/// `0.3`, `0.3+0.2i`, `0.3-0.2i`, printed at round-trip precision.
pub fn format_complex(z: CNum) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}
