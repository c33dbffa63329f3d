//! The TeX-subset input language: expressions, declarations, assignments
//! and command lines.

mod parser;
mod printer;

use thiserror::Error;

use crate::expr::Node;

pub use parser::Parser;
pub(crate) use parser::unbalanced_at;
pub use printer::{print_tex, render_tex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn shifted(mut self, by: usize) -> Self {
        self.position += by;
        self
    }
}

/// Parses one expression with the default set of derivative symbols.
pub fn parse(text: &str) -> Result<Node, ParseError> {
    Parser::new(text).parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    PropertyDeclaration,
    Assignment,
    Command,
    ExpressionLiteral,
}

/// `;` prints the result, `.` keeps quiet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminator {
    Echo,
    Silent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    /// The symbols on the left of `::`, one node per pattern.
    pub patterns: Vec<Node>,
    pub property: String,
    /// Positional arguments get keys "0", "1", ...
    pub args: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    /// `!`: repeat until nothing changes.
    pub repeat: bool,
    /// Label inside the first parentheses, `%` for the current expression.
    pub target: String,
    /// Raw text of the argument group, without its brackets.
    pub raw_args: Option<String>,
}

impl Command {
    /// The arguments as a flat list of expressions; a single list argument
    /// is unpacked.
    pub fn arg_exprs(&self) -> Result<Vec<Node>, ParseError> {
        let Some(raw) = &self.raw_args else {
            return Ok(Vec::new());
        };
        if raw.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for piece in split_top_level(raw, ',') {
            let e = parse(piece).map_err(|e| e.shifted(offset))?;
            offset += piece.len() + 1;
            out.push(e);
        }
        if out.len() == 1 && out[0].is_list() {
            return Ok(out.pop().unwrap().children);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    PropertyDeclaration(Declaration),
    Assignment { label: String, expr: Node },
    Command(Command),
    ExpressionLiteral(Node),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceLine {
    pub text: String,
    pub statement: Statement,
    pub terminator: Terminator,
}

impl SourceLine {
    pub fn kind(&self) -> LineKind {
        match self.statement {
            Statement::PropertyDeclaration(_) => LineKind::PropertyDeclaration,
            Statement::Assignment { .. } => LineKind::Assignment,
            Statement::Command(_) => LineKind::Command,
            Statement::ExpressionLiteral(_) => LineKind::ExpressionLiteral,
        }
    }
}

/// Splits `text` at `sep` occurrences outside any bracket pair.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Position of `pat` outside brackets.
fn find_top_level(text: &str, pat: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ if depth == 0 && text[i..].starts_with(pat) => return Some(i),
            _ => {}
        }
    }
    None
}

/// Drops `//` comments.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find("//") {
            Some(i) => &l[..i],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Splits a script into statements ending in `;` or `.` outside brackets.
/// Returns each statement's text (terminator included) and its byte offset.
/// Text after the last terminator is returned as an unterminated tail.
pub fn split_statements(text: &str) -> (Vec<(usize, &str)>, &str) {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ';' | '.' if depth <= 0 => {
                let stmt = &text[start..=i];
                if !stmt[..stmt.len() - 1].trim().is_empty() {
                    let lead = stmt.len() - stmt.trim_start().len();
                    out.push((start + lead, stmt.trim_start()));
                }
                start = i + 1;
                depth = 0;
            }
            _ => {}
        }
    }
    (out, &text[start..])
}

/// Parses one statement. A missing terminator counts as `;`.
pub fn parse_line(text: &str) -> Result<SourceLine, ParseError> {
    let trimmed = text.trim();
    let (body, terminator) = if let Some(b) = trimmed.strip_suffix(';') {
        (b, Terminator::Echo)
    } else if let Some(b) = trimmed.strip_suffix('.') {
        (b, Terminator::Silent)
    } else {
        (trimmed, Terminator::Echo)
    };
    let lead = text.len() - text.trim_start().len();
    if let Some(at) = unbalanced_at(body) {
        return Err(ParseError {
            position: lead + at,
            message: "unbalanced brackets".into(),
        });
    }
    let statement = if body.starts_with('@') && !body.starts_with("@(") {
        Statement::Command(parse_command(body).map_err(|e| e.shifted(lead))?)
    } else if let Some(i) = find_top_level(body, "::") {
        Statement::PropertyDeclaration(parse_declaration(body, i).map_err(|e| e.shifted(lead))?)
    } else if let Some(i) = find_top_level(body, ":=") {
        let label = body[..i].trim();
        if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(ParseError {
                position: lead,
                message: format!("bad label `{label}`"),
            });
        }
        let expr = parse(&body[i + 2..]).map_err(|e| e.shifted(lead + i + 2))?;
        Statement::Assignment {
            label: label.to_string(),
            expr,
        }
    } else {
        Statement::ExpressionLiteral(parse(body).map_err(|e| e.shifted(lead))?)
    };
    Ok(SourceLine {
        text: trimmed.to_string(),
        statement,
        terminator,
    })
}

fn parse_declaration(body: &str, at: usize) -> Result<Declaration, ParseError> {
    let lhs = &body[..at];
    let rhs = body[at + 2..].trim();
    let patterns = if lhs.trim().is_empty() {
        Vec::new()
    } else {
        let e = parse(lhs)?;
        if e.is_list() {
            e.children
        } else {
            vec![e]
        }
    };
    let rhs_start = at + 2 + (body[at + 2..].len() - body[at + 2..].trim_start().len());
    let (property, args) = match rhs.find('(') {
        Some(open) => {
            let Some(inner) = rhs[open + 1..].strip_suffix(')') else {
                return Err(ParseError {
                    position: rhs_start + rhs.len(),
                    message: "expected `)` after property arguments".into(),
                });
            };
            (rhs[..open].trim(), parse_property_args(inner))
        }
        None => (rhs, Vec::new()),
    };
    if property.is_empty() || !property.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(ParseError {
            position: rhs_start,
            message: format!("bad property name `{property}`"),
        });
    }
    Ok(Declaration {
        patterns,
        property: property.to_string(),
        args,
    })
}

fn parse_property_args(inner: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut positional = 0;
    for piece in split_top_level(inner, ',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        match find_top_level(piece, "=") {
            Some(i) if piece[..i].trim().chars().all(|c| c.is_alphanumeric() || c == '_') => {
                out.push((piece[..i].trim().to_string(), piece[i + 1..].trim().to_string()));
            }
            _ => {
                out.push((positional.to_string(), piece.to_string()));
                positional += 1;
            }
        }
    }
    out
}

fn parse_command(body: &str) -> Result<Command, ParseError> {
    let mut rest = body.trim_start_matches('@');
    let skipped = body.len() - rest.len();
    let name_len = rest
        .find(|c: char| !(c.is_alphanumeric() || c == '_'))
        .unwrap_or(rest.len());
    if name_len == 0 {
        return Err(ParseError {
            position: skipped,
            message: "expected a command name after `@`".into(),
        });
    }
    let name = rest[..name_len].to_string();
    rest = &rest[name_len..];
    let mut pos = skipped + name_len;
    let repeat = rest.starts_with('!');
    if repeat {
        rest = &rest[1..];
        pos += 1;
    }
    let (target, after) = match bracket_group(rest, pos)? {
        Some((inner, after, _)) => (inner.trim().to_string(), after),
        None => ("%".to_string(), rest),
    };
    pos = body.len() - after.len();
    let after_trim = after.trim_start();
    pos += after.len() - after_trim.len();
    let raw_args = match bracket_group(after_trim, pos)? {
        Some((inner, tail, _)) => {
            if !tail.trim().is_empty() {
                return Err(ParseError {
                    position: body.len() - tail.len(),
                    message: format!("unexpected `{}` after command arguments", tail.trim()),
                });
            }
            Some(inner.to_string())
        }
        None if after_trim.is_empty() => None,
        None => {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected `{after_trim}` after command"),
            })
        }
    };
    Ok(Command {
        name,
        repeat,
        target: if target.is_empty() { "%".into() } else { target },
        raw_args,
    })
}

/// If `s` starts with `(` or `{`, returns the enclosed text, the text
/// after the closing bracket and the opening bracket.
fn bracket_group(s: &str, pos: usize) -> Result<Option<(&str, &str, char)>, ParseError> {
    let open = match s.chars().next() {
        Some(c @ ('(' | '{')) => c,
        _ => return Ok(None),
    };
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(Some((&s[1..i], &s[i + 1..], open)));
                }
            }
            _ => {}
        }
    }
    Err(ParseError {
        position: pos + s.len(),
        message: "unbalanced brackets".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ParentRel;

    #[test]
    fn mixed_relations() {
        let e = parse("T^{\\mu}{}_{\\nu}(x)").unwrap();
        assert_eq!(&*e.name, "T");
        let rels: Vec<ParentRel> = e.children.iter().map(|c| c.rel).collect();
        assert_eq!(rels, [ParentRel::Superscript, ParentRel::Subscript, ParentRel::Argument]);
    }

    #[test]
    fn product_of_three() {
        let e = parse("R_{m n p q} R_{r s t u} R_{v w a b}").unwrap();
        assert!(e.is_prod());
        assert_eq!(e.children.len(), 3);
        assert!(e.children.iter().all(|c| c.index_count() == 4));
    }

    #[test]
    fn unbalanced_index_brace() {
        let err = parse("F_{m n").unwrap_err();
        assert_eq!(err.position, 6);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse("A_{}").is_err());
        assert!(parse("1/ x").is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn printer_examples() {
        for s in [
            "T_{q2 m} T_{q2 n}",
            "0",
            "-1/4 A B",
            "a - b + 2 c",
            "\\partial_{m}(T_{n q4} S_{q4} + C_{n p}) B_{m n p}",
            "\\bar{\\psi} \\Gamma_{m p} \\psi",
            "{a, b, -1/4}",
            "T^{\\mu}_{\\nu}(x)",
            "A -> B_{m} C_{m}",
            "\\int d^{n}x \\partial_{\\lambda}(F_{\\mu \\nu \\rho} \\psi^{\\mu}) \\psi^{\\nu}",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(print_tex(&e), s);
        }
    }

    #[test]
    fn tex_render_uses_frac() {
        let e = parse("{0, -1/4}").unwrap();
        assert_eq!(render_tex(&e), "\\{0, -\\frac{1}{4}\\}");
    }

    #[test]
    fn declaration_line() {
        let l = parse_line("{m,n,p,q#}::Indices(vector).").unwrap();
        assert_eq!(l.terminator, Terminator::Silent);
        let Statement::PropertyDeclaration(d) = l.statement else { panic!() };
        let names: Vec<&str> = d.patterns.iter().map(|p| &*p.name).collect();
        assert_eq!(names, ["m", "n", "p", "q#"]);
        assert_eq!(d.property, "Indices");
        assert_eq!(d.args, [("0".to_string(), "vector".to_string())]);

        let l = parse_line("{ \\lambda, \\epsilon }::Spinor(dimension=4, type=Majorana).").unwrap();
        let Statement::PropertyDeclaration(d) = l.statement else { panic!() };
        assert_eq!(d.args[1], ("type".to_string(), "Majorana".to_string()));
    }

    #[test]
    fn assignment_and_command_lines() {
        let l = parse_line("C:= A A;").unwrap();
        assert_eq!(l.kind(), LineKind::Assignment);
        assert_eq!(l.terminator, Terminator::Echo);
        let l = parse_line("@distribute!(%);").unwrap();
        let Statement::Command(c) = l.statement else { panic!() };
        assert_eq!((c.name.as_str(), c.repeat, c.target.as_str()), ("distribute", true, "%"));
        let l = parse_line("@substitute!(%)( A = B_{m n} B_{m n}, C -> D );").unwrap();
        let Statement::Command(c) = l.statement else { panic!() };
        assert_eq!(c.arg_exprs().unwrap().len(), 2);
    }

    #[test]
    fn statements_split_outside_brackets() {
        let (stmts, tail) = split_statements("a::Integer(0..9).\nC:= A\n  A;\nrest");
        assert_eq!(stmts.len(), 2);
        assert_eq!(stmts[1].1, "C:= A\n  A;");
        assert_eq!(tail, "\nrest");
    }
}
