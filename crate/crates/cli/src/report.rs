use serde_json::{Map, Value};

use dglift::dgmod::{ModuleError, SemifreeModule};
use dglift::diagonal::Diagonal;
use dglift::exactlin::SparseVec;
use dglift::obstruction::Obstruction;

/// A command's outcome: a JSON tree (object keys sort themselves) plus the
/// lines of the human-readable rendering.
pub struct Report {
    pub ok: bool,
    pub body: Map<String, Value>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, field: String) -> Report {
        let mut body = Map::new();
        body.insert("command".into(), command.into());
        body.insert("field".into(), field.clone().into());
        Report {
            ok: true,
            body,
            lines: vec![format!("{command} over {field}")],
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.into(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a property check; any failure makes the exit code 1.
    pub fn require(&mut self, what: &str, holds: bool) {
        self.ok &= holds;
        self.line(format!("  [{}] {what}", if holds { "ok" } else { "FAIL" }));
    }

    pub fn to_json(&self) -> String {
        let mut body = self.body.clone();
        body.insert("ok".into(), self.ok.into());
        let mut s =
            serde_json::to_string_pretty(&Value::Object(body)).expect("JSON values serialise");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push_str(if self.ok {
            "\nresult: ok\n"
        } else {
            "\nresult: FAIL\n"
        });
        s
    }
}

pub fn err(e: ModuleError) -> String {
    e.to_string()
}

/// `Σ e_λ·b_λ` for a degree-`d` coordinate vector of `N`.
pub fn module_element(n: &SemifreeModule, d: i64, v: &SparseVec) -> Result<String, ModuleError> {
    Ok(n.format_free(&n.free_elem(v, d)?))
}

/// Renders a vector of `(N ⊗ T^k)_d` as `e_λ⊗σ^k(c[m_0|…|m_k] + …)`.
pub fn tensor_element(
    ob: &Obstruction,
    k: usize,
    d: i64,
    v: &SparseVec,
) -> Result<String, ModuleError> {
    let n = ob.module();
    let diag: &Diagonal = ob.diagonal();
    let alg = n.algebra_arc();
    let t = ob.tensor(k);
    let mut parts = Vec::new();
    for lambda in 0..n.rank() {
        let x = t.component(d, v, lambda)?;
        if x.is_zero() {
            continue;
        }
        let jd = d - n.degree(lambda) - k as i64;
        let amb = diag.j_power(k).expand(jd, &x)?;
        let basis = diag.bar(k).degree(jd)?;
        let terms: Vec<String> = amb
            .iter()
            .map(|(i, c)| {
                let tuple: Vec<String> = basis.basis[i]
                    .iter()
                    .map(|m| alg.format_monomial(m))
                    .collect();
                let coeff = match format!("{c}").as_str() {
                    "1" => String::new(),
                    "-1" => "-".into(),
                    other => other.to_string(),
                };
                format!("{coeff}[{}]", tuple.join("|"))
            })
            .collect();
        parts.push(format!("{}⊗σ^{k}({})", n.name(lambda), terms.join(" + ")));
    }
    Ok(if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    })
}
