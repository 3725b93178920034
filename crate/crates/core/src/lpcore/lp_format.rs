//! Export to the CPLEX LP text format, for cross-checking with external
//! solvers.

use alloc::format;
use alloc::string::String;
use core::fmt::Write;

use super::{LinearProgram, Sense};

fn var_name(lp: &LinearProgram, j: usize) -> String {
    let name = &lp.variables()[j].name;
    if name.is_empty() {
        format!("x{j}")
    } else {
        sanitize(name)
    }
}

fn row_name(lp: &LinearProgram, i: usize) -> String {
    let name = &lp.constraints()[i].name;
    if name.is_empty() {
        format!("c{i}")
    } else {
        sanitize(name)
    }
}

// LP format forbids some characters in names and a leading digit or period.
fn sanitize(name: &str) -> String {
    let mut out: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "_.!\"#$%&()/,;?@'`{}|~".contains(c) { c } else { '_' })
        .collect();
    if out.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        out.insert(0, '_');
    }
    out
}

fn term(out: &mut String, coef: f64, name: &str, first: bool) {
    if coef < 0.0 {
        let _ = write!(out, " - {} {}", -coef, name);
    } else if first {
        let _ = write!(out, " {} {}", coef, name);
    } else {
        let _ = write!(out, " + {} {}", coef, name);
    }
}

/// Renders `lp` in LP format. Variables named by the builder keep their
/// names (sanitised); unnamed ones become `x<index>` / `c<index>`.
pub fn write_lp_format(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n obj:");
    let mut first = true;
    for (j, v) in lp.variables().iter().enumerate() {
        if v.cost != 0.0 {
            term(&mut out, v.cost, &var_name(lp, j), first);
            first = false;
        }
    }
    if lp.objective_offset() != 0.0 || first {
        let c = lp.objective_offset();
        if c < 0.0 {
            let _ = write!(out, " - {}", -c);
        } else if first {
            let _ = write!(out, " {c}");
        } else {
            let _ = write!(out, " + {c}");
        }
    }
    out.push_str("\nSubject To\n");
    for (i, c) in lp.constraints().iter().enumerate() {
        let _ = write!(out, " {}:", row_name(lp, i));
        let mut first = true;
        for &(v, a) in &c.coeffs {
            term(&mut out, a, &var_name(lp, v.0), first);
            first = false;
        }
        if first {
            out.push_str(" 0 x_empty");
        }
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        let _ = writeln!(out, " {op} {}", c.rhs);
    }
    out.push_str("Bounds\n");
    for (j, v) in lp.variables().iter().enumerate() {
        let name = var_name(lp, j);
        match (v.lower.is_finite(), v.upper.is_finite()) {
            (false, false) => {
                let _ = writeln!(out, " {name} free");
            }
            (true, true) if v.lower == v.upper => {
                let _ = writeln!(out, " {name} = {}", v.lower);
            }
            (true, true) => {
                let _ = writeln!(out, " {} <= {name} <= {}", v.lower, v.upper);
            }
            (true, false) => {
                if v.lower != 0.0 {
                    let _ = writeln!(out, " {name} >= {}", v.lower);
                }
            }
            (false, true) => {
                let _ = writeln!(out, " -inf <= {name} <= {}", v.upper);
            }
        }
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_model_renders() {
        let mut lp = LinearProgram::new();
        let x = lp.add_named_var("G[b 1]", 0.0, 10.0, 3.0);
        let y = lp.add_var(f64::NEG_INFINITY, f64::INFINITY, -1.0);
        lp.add_named_row("kcl", vec![(x, 1.0), (y, -2.0)], Sense::Eq, 4.0);
        lp.set_objective_offset(5.0);
        let text = write_lp_format(&lp);
        assert_eq!(
            text,
            "Minimize\n obj: 3 G_b_1_ - 1 x1 + 5\nSubject To\n kcl: 1 G_b_1_ - 2 x1 = 4\n\
             Bounds\n 0 <= G_b_1_ <= 10\n x1 free\nEnd\n"
        );
    }
}
