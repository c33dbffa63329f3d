//! Interactive sessions: named expressions, declarations and commands.

mod commands;
pub mod protocol;

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::expr::{normalize, Node, INTERPOLATE};
use crate::notation::{
    parse_line, print_tex, render_tex, split_statements, strip_comments, Command, Statement, Terminator,
};
use crate::properties::Registry;

pub use protocol::serve_protocol;

/// Label under which an expression typed without `label:=` is kept.
const ANONYMOUS: &str = "%";

/// One printed result, as plain input-language text and as TeX.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Printed {
    pub plain: String,
    pub tex: String,
}

#[derive(Clone, Debug, Default)]
struct State {
    registry: Registry,
    bindings: HashMap<String, Node>,
    current: Option<String>,
    post_rules: Vec<Command>,
}

/// Registry, bindings and history of one interactive session.
#[derive(Clone, Debug, Default)]
pub struct Session {
    state: State,
    history: Vec<(String, Vec<String>)>,
}

/// The commands run after every command once default rules are on.
pub const DEFAULT_POST_RULES: &str =
    "::PostDefaultRules(@@prodsort!(%), @@rename_dummies!(%), @@canonicalise!(%), @@collect_terms!(%)).";

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    /// A session with the standard post-command rules switched on.
    pub fn with_default_rules() -> Self {
        let mut s = Session::new();
        s.eval_line(DEFAULT_POST_RULES).expect("built-in rules parse");
        s
    }

    pub fn registry(&self) -> &Registry {
        &self.state.registry
    }

    pub fn binding(&self, label: &str) -> Option<&Node> {
        self.state.bindings.get(label)
    }

    /// The expression `%` refers to.
    pub fn current(&self) -> Option<&Node> {
        self.state.current.as_ref().and_then(|l| self.state.bindings.get(l))
    }

    pub fn labels(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.state.bindings.keys().map(String::as_str).collect();
        v.sort();
        v
    }

    pub fn post_rules_enabled(&self) -> bool {
        !self.state.post_rules.is_empty()
    }

    /// Evaluated inputs with their printed lines.
    pub fn history(&self) -> &[(String, Vec<String>)] {
        &self.history
    }

    /// Evaluates every statement of `text`. On error nothing changes.
    pub fn eval_line(&mut self, text: &str) -> Result<Vec<Printed>> {
        let cleaned = strip_comments(text);
        let (stmts, tail) = split_statements(&cleaned);
        let mut pieces: Vec<&str> = stmts.into_iter().map(|(_, s)| s).collect();
        if !tail.trim().is_empty() {
            pieces.push(tail);
        }
        let mut next = self.state.clone();
        let mut printed = Vec::new();
        for p in pieces {
            printed.extend(eval_statement(&mut next, p)?);
        }
        self.state = next;
        self.history
            .push((text.trim().to_string(), printed.iter().map(|p| p.plain.clone()).collect()));
        Ok(printed)
    }

    /// Runs a script file; see [`Session::run_source`].
    pub fn run_script(&mut self, path: &Path, keep_going: bool) -> std::io::Result<ScriptOutcome> {
        let text = std::fs::read_to_string(path)?;
        Ok(self.run_source(&text, keep_going))
    }

    /// Evaluates a script statement by statement. Stops at the first error
    /// unless `keep_going` is set.
    pub fn run_source(&mut self, text: &str, keep_going: bool) -> ScriptOutcome {
        let cleaned = strip_comments(text);
        let (stmts, tail) = split_statements(&cleaned);
        let mut pieces: Vec<(usize, &str)> = stmts;
        if !tail.trim().is_empty() {
            let lead = tail.len() - tail.trim_start().len();
            pieces.push((cleaned.len() - tail.len() + lead, tail));
        }
        let mut out = ScriptOutcome::default();
        for (offset, stmt) in pieces {
            let line = cleaned[..offset].matches('\n').count() + 1;
            match self.eval_line(stmt) {
                Ok(printed) => out.transcript.extend(printed.into_iter().map(|p| p.plain)),
                Err(e) => {
                    let msg = format!("line {line}: {e}");
                    out.transcript.push(format!("// error: {msg}"));
                    out.errors.push(msg);
                    if !keep_going {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Line-oriented interactive loop. Statements may span several lines;
    /// each is evaluated once its terminator has been read.
    pub fn repl<R: BufRead, W: Write>(&mut self, input: R, mut output: W) -> std::io::Result<()> {
        let mut pending = String::new();
        write!(output, "> ")?;
        output.flush()?;
        for line in input.lines() {
            let line = line?;
            pending.push_str(&line);
            pending.push('\n');
            let cleaned = strip_comments(&pending);
            let (stmts, tail) = split_statements(&cleaned);
            if stmts.is_empty() || !tail.trim().is_empty() {
                write!(output, "  ")?;
                output.flush()?;
                continue;
            }
            match self.eval_line(&pending) {
                Ok(printed) => {
                    for p in printed {
                        writeln!(output, "{}", p.plain)?;
                    }
                }
                Err(e) => writeln!(output, "error: {e}")?,
            }
            pending.clear();
            write!(output, "> ")?;
            output.flush()?;
        }
        writeln!(output)?;
        Ok(())
    }

    /// Replays the recorded inputs into a fresh session.
    pub fn replay(&self) -> Result<Session> {
        let mut s = Session::new();
        for (input, _) in &self.history {
            s.eval_line(input)?;
        }
        Ok(s)
    }
}

/// Result of running a script.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScriptOutcome {
    pub transcript: Vec<String>,
    /// Diagnostics prefixed with their line numbers.
    pub errors: Vec<String>,
}

impl ScriptOutcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.errors.is_empty())
    }
}

fn eval_statement(state: &mut State, text: &str) -> Result<Vec<Printed>> {
    let line = parse_line(text)?;
    let echo = line.terminator == Terminator::Echo;
    match line.statement {
        Statement::PropertyDeclaration(d) => {
            if d.property == "PostDefaultRules" {
                let mut rules = Vec::new();
                for (_, raw) in &d.args {
                    match parse_line(raw)?.statement {
                        Statement::Command(c) => rules.push(c),
                        _ => return Err(Error::InvalidDeclaration(format!("`{raw}` is not a command"))),
                    }
                }
                state.post_rules = rules;
            } else {
                state.registry.declare_parsed(&d)?;
            }
            Ok(Vec::new())
        }
        Statement::Assignment { label, expr } => {
            let e = splice(&expr, &state.bindings)?;
            state.bindings.insert(label.clone(), e);
            state.current = Some(label.clone());
            Ok(printed(state, &label, echo))
        }
        Statement::ExpressionLiteral(expr) => {
            let e = splice(&expr, &state.bindings)?;
            state.bindings.insert(ANONYMOUS.to_string(), e);
            state.current = Some(ANONYMOUS.to_string());
            Ok(printed(state, ANONYMOUS, echo))
        }
        Statement::Command(cmd) => {
            if cmd.name == "properties" {
                let sym = crate::notation::parse(&cmd.target)?;
                let props = state.registry.describe(&sym);
                let text = format!("{}::{{{}}}", cmd.target, props.join(", "));
                return Ok(if echo { vec![Printed { tex: text.clone(), plain: text }] } else { Vec::new() });
            }
            let label = resolve_target(state, &cmd.target)?;
            let e = state.bindings[&label].clone();
            let args = command_args(&cmd, &state.bindings)?;
            let mut out = commands::run(&cmd.name, cmd.repeat, &e, &args, &state.registry)?;
            for rule in &state.post_rules {
                let args = command_args(rule, &state.bindings)?;
                out = commands::run(&rule.name, rule.repeat, &out, &args, &state.registry)?;
            }
            state.bindings.insert(label.clone(), out);
            state.current = Some(label.clone());
            Ok(printed(state, &label, echo))
        }
    }
}

fn resolve_target(state: &State, target: &str) -> Result<String> {
    if target == "%" {
        return state.current.clone().ok_or_else(|| Error::UnknownLabel("%".into()));
    }
    if state.bindings.contains_key(target) {
        Ok(target.to_string())
    } else {
        Err(Error::UnknownLabel(target.to_string()))
    }
}

fn command_args(cmd: &Command, bindings: &HashMap<String, Node>) -> Result<Vec<Node>> {
    let mut args = Vec::new();
    for a in cmd.arg_exprs()? {
        let a = splice(&a, bindings)?;
        if a.is_list() {
            args.extend(a.children);
        } else {
            args.push(a);
        }
    }
    Ok(args)
}

fn printed(state: &State, label: &str, echo: bool) -> Vec<Printed> {
    if !echo {
        return Vec::new();
    }
    let e = &state.bindings[label];
    let (plain, tex) = if label == ANONYMOUS {
        (format!("{};", print_tex(e)), render_tex(e))
    } else {
        (format!("{label}:= {};", print_tex(e)), format!("{label} = {}", render_tex(e)))
    };
    vec![Printed { plain, tex }]
}

/// Replaces every `@(label)` by a copy of the bound expression.
pub fn splice(e: &Node, bindings: &HashMap<String, Node>) -> Result<Node> {
    fn go(e: &Node, bindings: &HashMap<String, Node>) -> Result<Node> {
        if e.is(INTERPOLATE) {
            let label = e.children.first().map(|c| c.name.to_string()).unwrap_or_default();
            let bound = bindings.get(&label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
            let mut out = bound.clone();
            out.multiplier = &out.multiplier * &e.multiplier;
            out.rel = e.rel;
            out.bracket = e.bracket;
            return Ok(out);
        }
        let mut out = e.clone();
        out.children = e.children.iter().map(|c| go(c, bindings)).collect::<Result<_>>()?;
        Ok(out)
    }
    Ok(normalize(go(e, bindings)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &mut Session, line: &str) -> Vec<String> {
        s.eval_line(line).unwrap().into_iter().map(|p| p.plain).collect()
    }

    #[test]
    fn assignment_and_collect() {
        let mut s = Session::new();
        assert_eq!(run(&mut s, "X:= 1/2 a + 1/2 a;"), ["X:= 1/2 a + 1/2 a;"]);
        assert_eq!(run(&mut s, "@collect_terms!(%);"), ["X:= a;"]);
        assert!(run(&mut s, "Y:= b.").is_empty());
        assert_eq!(s.binding("Y").unwrap().to_string(), "b");
    }

    #[test]
    fn unknown_command_leaves_state() {
        let mut s = Session::new();
        run(&mut s, "A:= x;");
        let before = s.binding("A").cloned();
        let err = s.eval_line("@undefined_cmd!(%);").unwrap_err();
        assert_eq!(err.to_string(), "unknown command @undefined_cmd");
        assert_eq!(s.binding("A").cloned(), before);
        let err = s.eval_line("@spinorsort!(%);").unwrap_err();
        assert_eq!(err.to_string(), "unimplemented command @spinorsort");
    }

    #[test]
    fn errors_are_transactional() {
        let mut s = Session::new();
        run(&mut s, "{m,n}::Indices(vector).");
        let err = s.eval_line("B:= y; C:= (;");
        assert!(err.is_err());
        assert!(s.binding("B").is_none());
    }

    #[test]
    fn interpolation_splices_bindings() {
        let mut s = Session::new();
        run(&mut s, "W1:= a b;");
        run(&mut s, "W2:= c + d;");
        assert_eq!(run(&mut s, "L:= { @(W1), @(W2) };"), ["L:= {a b, c + d};"]);
        assert!(s.eval_line("M:= @(nothing);").is_err());
    }

    #[test]
    fn anonymous_expressions() {
        let mut s = Session::new();
        assert_eq!(run(&mut s, "{a, b};"), ["{a, b};"]);
        assert_eq!(run(&mut s, "@list_sum!(%);"), ["a + b;"]);
    }

    #[test]
    fn scripts_report_line_numbers() {
        let mut s = Session::new();
        let out = s.run_source("A:= x;\nB:= y;\nC:= (z;\nD:= w;\n", false);
        assert_eq!(out.exit_code(), 1);
        assert!(out.errors[0].starts_with("line 3:"), "{:?}", out.errors);
        assert!(s.binding("D").is_none());
        let mut s = Session::new();
        let out = s.run_source("", false);
        assert_eq!(out.exit_code(), 0);
        assert!(out.transcript.is_empty());
    }

    #[test]
    fn replay_is_deterministic() {
        let mut s = Session::new();
        for l in ["{m,n,p,q#}::Indices(vector).", "C:= A A;", "@substitute!(%)( A = B_{m n} B_{m n} );"] {
            s.eval_line(l).unwrap();
        }
        let r = s.replay().unwrap();
        assert_eq!(r.binding("C"), s.binding("C"));
    }

    #[test]
    fn default_rules_apply_after_commands() {
        let mut s = Session::with_default_rules();
        run(&mut s, "{a,b,c,d}::Indices(vector).");
        run(&mut s, "F_{a b}::AntiSymmetric.");
        run(&mut s, "E:= F_{b a} + F_{a b} + x (y + z);");
        assert_eq!(run(&mut s, "@distribute!(%);"), ["E:= x y + x z;"]);
    }
}
