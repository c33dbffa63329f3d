use crate::expr::{Bracket, Node, ParentRel, ARROW, EQUALS, INT, INTERPOLATE, LIST, MEASURE};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Re-parseable input syntax.
    Plain,
    /// Display TeX for a math renderer.
    Tex,
}

/// Prints an expression in the input syntax; the output parses back to
/// the same tree.
pub fn print_tex(e: &Node) -> String {
    let mut out = String::new();
    write_term(&mut out, e, Mode::Plain);
    out
}

/// Prints an expression as display TeX (`\frac`, escaped list braces).
pub fn render_tex(e: &Node) -> String {
    let mut out = String::new();
    write_term(&mut out, e, Mode::Tex);
    out
}

fn write_rational(out: &mut String, r: &Rational, mode: Mode) {
    if mode == Mode::Tex && !r.is_integer() {
        let sign = if r.is_negative() { "-" } else { "" };
        out.push_str(&format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom()));
    } else {
        out.push_str(&r.to_string());
    }
}

/// A node including its multiplier.
fn write_term(out: &mut String, e: &Node, mode: Mode) {
    if e.is_number() {
        write_rational(out, &e.multiplier, mode);
        return;
    }
    let m = &e.multiplier;
    if m.is_one() {
        write_body(out, e, mode);
        return;
    }
    if *m == Rational::from_int(-1) {
        out.push('-');
    } else {
        write_rational(out, m, mode);
        out.push(' ');
    }
    if e.is_sum() {
        out.push('(');
        write_body(out, e, mode);
        out.push(')');
    } else {
        write_body(out, e, mode);
    }
}

/// A node ignoring its own multiplier.
fn write_body(out: &mut String, e: &Node, mode: Mode) {
    match &*e.name {
        crate::expr::SUM => {
            for (i, t) in e.children.iter().enumerate() {
                if i == 0 {
                    write_term(out, t, mode);
                } else if t.multiplier.is_negative() {
                    out.push_str(" - ");
                    let mut pos = t.clone();
                    pos.multiplier = -&t.multiplier;
                    write_term(out, &pos, mode);
                } else {
                    out.push_str(" + ");
                    write_term(out, t, mode);
                }
            }
        }
        crate::expr::PROD => {
            for (i, f) in e.children.iter().enumerate() {
                if i > 0 {
                    let prev = &e.children[i - 1];
                    if mode == Mode::Plain && f.is_sum() && prev.argument_children().next().is_some() {
                        // keeps the bracket from reading as another argument
                        out.push_str(" * ");
                    } else {
                        out.push(' ');
                    }
                }
                write_factor(out, f, mode);
            }
        }
        LIST => {
            out.push_str(if mode == Mode::Tex { "\\{" } else { "{" });
            for (i, c) in e.children.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(out, c, mode);
            }
            out.push_str(if mode == Mode::Tex { "\\}" } else { "}" });
        }
        EQUALS | ARROW => {
            let op = if e.is(EQUALS) {
                " = "
            } else if mode == Mode::Tex {
                " \\rightarrow "
            } else {
                " -> "
            };
            for (i, c) in e.children.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                write_term(out, c, mode);
            }
        }
        INT => {
            out.push_str("\\int");
            for c in &e.children {
                out.push(' ');
                if c.is(MEASURE) {
                    write_measure(out, c, mode);
                } else if !c.multiplier.is_one() && !c.is_number() {
                    out.push('(');
                    write_term(out, c, mode);
                    out.push(')');
                } else if c.bracket == Bracket::Curly {
                    out.push('{');
                    write_body(out, c, mode);
                    out.push('}');
                } else {
                    write_factor(out, c, mode);
                }
            }
        }
        INTERPOLATE => {
            out.push_str("@(");
            if let Some(c) = e.children.first() {
                out.push_str(&c.name);
            }
            out.push(')');
        }
        _ => write_named(out, e, mode),
    }
}

fn write_factor(out: &mut String, f: &Node, mode: Mode) {
    if f.is_sum() && f.multiplier.is_one() {
        out.push('(');
        write_body(out, f, mode);
        out.push(')');
    } else {
        write_term(out, f, mode);
    }
}

fn write_measure(out: &mut String, m: &Node, mode: Mode) {
    out.push('d');
    let sup: Vec<&Node> = m.children.iter().filter(|c| c.rel.is_index()).collect();
    if !sup.is_empty() {
        out.push_str("^{");
        for (i, s) in sup.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write_term(out, s, mode);
        }
        out.push('}');
    }
    for c in m.children.iter().filter(|c| !c.rel.is_index()) {
        write_term(out, c, mode);
    }
}

fn write_named(out: &mut String, e: &Node, mode: Mode) {
    out.push_str(&e.name);
    let mut i = 0;
    let ch = &e.children;
    while i < ch.len() {
        let c = &ch[i];
        match c.rel {
            ParentRel::Subscript | ParentRel::Superscript => {
                let rel = c.rel;
                out.push_str(if rel == ParentRel::Subscript { "_{" } else { "^{" });
                let mut first = true;
                while i < ch.len() && ch[i].rel == rel {
                    if !first {
                        out.push(' ');
                    }
                    first = false;
                    write_term(out, &ch[i], mode);
                    i += 1;
                }
                out.push('}');
            }
            _ => match c.bracket {
                Bracket::Curly => {
                    out.push('{');
                    write_term(out, c, mode);
                    out.push('}');
                    i += 1;
                }
                Bracket::None => {
                    out.push('(');
                    write_term(out, c, mode);
                    out.push(')');
                    i += 1;
                }
                Bracket::Round => {
                    out.push('(');
                    let mut first = true;
                    while i < ch.len() && !ch[i].rel.is_index() && ch[i].bracket == Bracket::Round {
                        if !first {
                            out.push_str(", ");
                        }
                        first = false;
                        write_term(out, &ch[i], mode);
                        i += 1;
                    }
                    out.push(')');
                }
            },
        }
    }
}
