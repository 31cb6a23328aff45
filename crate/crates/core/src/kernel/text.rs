//! Line-per-node text form of finite certificates.
//!
//! Each line is `id rule[payload](lhs REL rhs){premise ids}`, premises before their
//! consumers, the root last.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Certificate, KernelError, Rule, SupMembers};
use crate::names::OrdName;

pub fn to_text(cert: &Certificate, print: &dyn Fn(&OrdName) -> String) -> Result<String, KernelError> {
    let mut lines = Vec::new();
    let mut ids = HashMap::new();
    emit(cert, print, &mut lines, &mut ids)?;
    let mut out = lines.join("\n");
    out.push('\n');
    Ok(out)
}

fn list(names: &[OrdName], print: &dyn Fn(&OrdName) -> String) -> String {
    names.iter().map(print).collect::<Vec<_>>().join(", ")
}

fn emit(
    cert: &Certificate,
    print: &dyn Fn(&OrdName) -> String,
    lines: &mut Vec<String>,
    ids: &mut HashMap<usize, usize>,
) -> Result<usize, KernelError> {
    // Shared subtrees are written once.
    let key = Arc::as_ptr(&cert.0) as usize;
    if let Some(&id) = ids.get(&key) {
        return Ok(id);
    }
    let premises = cert.finite_premises().ok_or(KernelError::Infinitary)?;
    let mut refs = Vec::with_capacity(premises.len());
    for p in premises {
        refs.push(emit(p, print, lines, ids)?.to_string());
    }
    let payload = match cert.rule() {
        Rule::LtIntro { width } => format!("[m={width}]"),
        Rule::Weaken { extra } => format!("[{}]", list(extra, print)),
        Rule::CutLeft { beta } | Rule::DropLeft { beta } => format!("[{}]", print(beta)),
        Rule::SupLeIntro { members: SupMembers::Finite(ms) } => format!("[{}]", list(ms, print)),
        Rule::SupLeIntro { members: SupMembers::Family(f) } => match f.members() {
            Some(ms) => format!("[{}]", list(ms, print)),
            None => return Err(KernelError::Infinitary),
        },
        _ => String::new(),
    };
    let c = cert.conclusion();
    let id = lines.len() + 1;
    lines.push(format!(
        "{id} {}{payload}({} {} {}){{{}}}",
        cert.rule().name(),
        print(&c.lhs),
        c.kind.symbol(),
        list(&c.rhs, print),
        refs.join(",")
    ));
    ids.insert(key, id);
    Ok(id)
}
