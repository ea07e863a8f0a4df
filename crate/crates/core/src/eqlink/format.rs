//! Text format:
//!
//! ```text
//! component a 0 1 0 -1     # ray step of each arc
//! component b 0 0
//! basepoint a 2            # optional, default 0
//! crossing a 0 b 1 +1      # over arc, under arc, sign
//! ```

use std::fmt::Write;

use super::{AnnularDiagram, ArcRef, Component, Crossing, EqLinkError};

pub fn parse_diagram(text: &str) -> Result<AnnularDiagram, EqLinkError> {
    let err = |line: usize, msg: String| EqLinkError::Parse { line, msg };
    let int = |line: usize, w: &str| w.parse::<i64>().map_err(|_| err(line, format!("expected an integer, got `{w}`")));
    let mut d = AnnularDiagram::default();
    let mut late: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "component" => {
                if words.len() < 3 {
                    return Err(err(ln, "expected `component NAME STEP...`".into()));
                }
                let steps = words[2..].iter().map(|w| int(ln, w)).collect::<Result<_, _>>()?;
                d.components.push(Component::new(words[1], steps));
            }
            "basepoint" | "crossing" => late.push((ln, words.iter().map(|w| w.to_string()).collect())),
            other => return Err(err(ln, format!("unknown record `{other}`"))),
        }
    }
    for (ln, words) in late {
        let comp = |name: &str| d.component(name).map_err(|e| err(ln, e.to_string()));
        let arc = |w: &str| int(ln, w).and_then(|v| usize::try_from(v).map_err(|_| err(ln, format!("negative arc `{w}`"))));
        if words[0] == "basepoint" {
            if words.len() != 3 {
                return Err(err(ln, "expected `basepoint NAME ARC`".into()));
            }
            let c = comp(&words[1])?;
            d.components[c].basepoint = arc(&words[2])?;
        } else {
            if words.len() != 6 {
                return Err(err(ln, "expected `crossing OVER ARC UNDER ARC SIGN`".into()));
            }
            let over = ArcRef::new(comp(&words[1])?, arc(&words[2])?);
            let under = ArcRef::new(comp(&words[3])?, arc(&words[4])?);
            let sign = match words[5].as_str() {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                w => return Err(err(ln, format!("sign must be +1 or -1, got `{w}`"))),
            };
            d.crossings.push(Crossing { over, under, sign });
        }
    }
    Ok(d)
}

pub fn serialize_diagram(d: &AnnularDiagram) -> String {
    let mut out = String::new();
    for c in &d.components {
        let steps: Vec<String> = c.steps.iter().map(|s| s.to_string()).collect();
        writeln!(out, "component {} {}", c.name, steps.join(" ")).expect("write to string");
    }
    for c in &d.components {
        if c.basepoint != 0 {
            writeln!(out, "basepoint {} {}", c.name, c.basepoint).expect("write to string");
        }
    }
    for x in &d.crossings {
        let name = |r: ArcRef| d.components.get(r.component).map_or("?", |c| c.name.as_str());
        writeln!(
            out,
            "crossing {} {} {} {} {:+}",
            name(x.over),
            x.over.arc,
            name(x.under),
            x.under.arc,
            x.sign
        )
        .expect("write to string");
    }
    out
}
