use std::collections::HashSet;

use crate::expr::{normalize, Bracket, Node, ParentRel, ARROW, EQUALS, INT, INTERPOLATE, MEASURE};
use crate::rational::Rational;

use super::ParseError;

const DEFAULT_DERIVATIVES: &[&str] = &["\\partial", "\\ppartial", "\\nabla", "\\diff"];

/// Recursive-descent parser for the input language.
///
/// Names listed as derivatives accept a parenthesized argument even when
/// separated from it by whitespace (`\partial_{m} (A B)`).
pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
    derivatives: HashSet<String>,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            derivatives: DEFAULT_DERIVATIVES.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn with_derivatives<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.derivatives.extend(names.into_iter().map(Into::into));
        self
    }

    /// Parses the whole input as one expression (or rule) and normalizes it.
    pub fn parse(mut self) -> Result<Node, ParseError> {
        let e = self.rule()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error(format!("unexpected `{}`", self.peek().unwrap())));
        }
        Ok(normalize(e))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos.min(self.src.len()),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(offset)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
        self.pos > start
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(format!("expected `{c}` before end of input"))),
        }
    }

    fn rule(&mut self) -> Result<Node, ParseError> {
        let lhs = self.sum()?;
        self.skip_ws();
        let op = if self.rest().starts_with("->") {
            self.pos += 2;
            ARROW
        } else if self.rest().starts_with('=') {
            self.pos += 1;
            EQUALS
        } else {
            return Ok(lhs);
        };
        let rhs = self.sum()?;
        Ok(Node::new(op).with_children(vec![lhs, rhs]))
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some('-') && !self.rest().starts_with("->") {
            self.bump();
            negate = true;
        } else if self.peek() == Some('+') {
            self.bump();
        }
        loop {
            let mut t = self.product()?;
            if negate {
                t.multiplier = -t.multiplier;
            }
            terms.push(t);
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') if !self.rest().starts_with("->") => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Node::sum(terms)
        })
    }

    fn at_product_end(&self) -> bool {
        match self.peek() {
            None => true,
            Some(c) => matches!(c, '+' | '-' | '=' | ',' | ')' | '}' | ']' | ';' | ':'),
        }
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            if self.at_product_end() {
                break;
            }
            if self.peek() == Some('*') {
                self.bump();
                continue;
            }
            let f = self.factor()?;
            if f.is(INT) && f.children.iter().all(|c| c.is(MEASURE)) {
                // the integral extends over the rest of the product
                let integrand = self.product_or_empty()?;
                let mut f = f;
                if let Some(body) = integrand {
                    f.children.push(body.with_rel(ParentRel::Argument));
                }
                factors.push(f);
                break;
            }
            factors.push(f);
        }
        match factors.len() {
            0 => Err(self.error(match self.peek() {
                Some(c) => format!("expected an expression, found `{c}`"),
                None => "expected an expression before end of input".to_string(),
            })),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Node::prod(factors)),
        }
    }

    fn product_or_empty(&mut self) -> Result<Option<Node>, ParseError> {
        self.skip_ws();
        if self.at_product_end() {
            return Ok(None);
        }
        self.product().map(Some)
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            '0'..='9' => self.number(),
            '(' => {
                self.bump();
                let inner = self.rule()?;
                self.expect(')')?;
                Ok(inner)
            }
            '{' => {
                self.bump();
                let items = self.comma_list('}')?;
                Ok(Node::list(items))
            }
            '@' => {
                self.bump();
                if self.peek() != Some('(') {
                    return Err(self.error("expected `(` after `@`"));
                }
                self.bump();
                self.skip_ws();
                let label = self.name().ok_or_else(|| self.error("expected a label"))?;
                self.expect(')')?;
                Ok(Node::new(INTERPOLATE).with_children(vec![Node::new(&label)]))
            }
            '_' | '^' => {
                // a bare index with its position, as in `@asym(%)( ^{m}, ^{n} )`
                let rel = if self.bump() == Some('_') {
                    ParentRel::Subscript
                } else {
                    ParentRel::Superscript
                };
                let mut group = self.index_group()?;
                if group.len() != 1 {
                    return Err(self.error("a bare index group holds exactly one index"));
                }
                Ok(group.pop().unwrap().with_rel(rel))
            }
            '\\' | '#' => self.named(),
            c if c.is_alphabetic() => self.named(),
            c => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let digits = self.digits();
        let mut text = digits;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("malformed rational: expected a denominator"));
            }
            let den = self.digits();
            text = format!("{text}/{den}");
        } else {
            self.pos = save;
        }
        let value: Rational = text.parse().map_err(|_| ParseError {
            position: start,
            message: format!("malformed rational `{text}`"),
        })?;
        Ok(Node::number(value))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }

    /// `\name`, an alphanumeric run, or `#`; a trailing `#` marks a family.
    fn name(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek()? {
            '#' => {
                self.bump();
            }
            '\\' => {
                self.bump();
                if !self.peek().is_some_and(char::is_alphabetic) {
                    // single-character control symbols such as `\,`
                    self.bump()?;
                } else {
                    while self.peek().is_some_and(char::is_alphabetic) {
                        self.bump();
                    }
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                }
            }
            c if c.is_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_alphanumeric()) {
                    self.bump();
                }
            }
            _ => return None,
        }
        if self.pos > start && self.src[start..self.pos] != *"#" && self.peek() == Some('#') {
            self.bump();
        }
        Some(self.src[start..self.pos].to_string())
    }

    fn named(&mut self) -> Result<Node, ParseError> {
        let name = self.name().ok_or_else(|| self.error("expected a name"))?;
        let mut node = Node::new(&name);
        if name == INT && !matches!(self.peek(), Some('{') | Some('(') | Some('_') | Some('^')) {
            self.measure(&mut node)?;
            return Ok(node);
        }
        self.postfixes(&mut node, &name)?;
        Ok(node)
    }

    /// `d^nx` / `d^{n}x` right after `\int`.
    fn measure(&mut self, node: &mut Node) -> Result<(), ParseError> {
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('d') && self.peek_at(1) == Some('^') {
            self.bump();
            self.bump();
            let mut m = Node::new(MEASURE);
            for idx in self.index_group()? {
                m.children.push(idx.with_rel(ParentRel::Superscript));
            }
            let var = self.name().ok_or_else(|| self.error("expected integration variable"))?;
            m.children.push(Node::new(&var).with_rel(ParentRel::Argument));
            node.children.push(m.with_rel(ParentRel::Argument));
        } else {
            self.pos = save;
        }
        Ok(())
    }

    fn postfixes(&mut self, node: &mut Node, name: &str) -> Result<(), ParseError> {
        loop {
            match self.peek() {
                Some('_') | Some('^') => {
                    let rel = if self.bump() == Some('_') {
                        ParentRel::Subscript
                    } else {
                        ParentRel::Superscript
                    };
                    for idx in self.index_group()? {
                        node.children.push(idx.with_rel(rel));
                    }
                }
                Some('{') => {
                    self.bump();
                    let save = self.pos;
                    self.skip_ws();
                    if self.peek() == Some('}') {
                        self.bump();
                        continue;
                    }
                    self.pos = save;
                    for mut a in self.comma_list('}')? {
                        a.rel = ParentRel::Argument;
                        a.bracket = Bracket::Curly;
                        node.children.push(a);
                    }
                }
                Some('(') => self.round_args(node)?,
                Some(c) if c.is_whitespace() && self.derivatives.contains(name) => {
                    let save = self.pos;
                    self.skip_ws();
                    if self.peek() == Some('(') {
                        self.round_args(node)?;
                    } else {
                        self.pos = save;
                        return Ok(());
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn round_args(&mut self, node: &mut Node) -> Result<(), ParseError> {
        self.bump();
        for mut a in self.comma_list(')')? {
            a.rel = ParentRel::Argument;
            a.bracket = Bracket::Round;
            node.children.push(a);
        }
        Ok(())
    }

    fn comma_list(&mut self, close: char) -> Result<Vec<Node>, ParseError> {
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.bump();
            return Ok(items);
        }
        loop {
            items.push(self.rule()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(c) if c == close => {
                    self.bump();
                    return Ok(items);
                }
                Some(c) => return Err(self.error(format!("expected `,` or `{close}`, found `{c}`"))),
                None => return Err(self.error(format!("unbalanced brackets: missing `{close}`"))),
            }
        }
    }

    /// The indices after `_` or `^`: a braced, space-separated group or a
    /// single token.
    fn index_group(&mut self) -> Result<Vec<Node>, ParseError> {
        match self.peek() {
            Some('{') => {
                self.bump();
                let mut out = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some('}') => {
                            self.bump();
                            break;
                        }
                        None => return Err(self.error("unbalanced brace in index group")),
                        Some(c) if c.is_ascii_digit() => {
                            let d = self.digits();
                            out.push(Node::new(&d));
                        }
                        Some(_) => {
                            let name = self
                                .name()
                                .ok_or_else(|| self.error(format!("unexpected `{}` in index group", self.peek().unwrap())))?;
                            let mut idx = Node::new(&name);
                            if matches!(self.peek(), Some('{')) && name.starts_with('\\') {
                                self.postfixes(&mut idx, &name)?;
                            }
                            out.push(idx);
                        }
                    }
                }
                if out.is_empty() {
                    return Err(self.error("empty index group"));
                }
                Ok(out)
            }
            Some('\\') => {
                let name = self.name().ok_or_else(|| self.error("expected an index"))?;
                Ok(vec![Node::new(&name)])
            }
            Some(c) if c.is_alphanumeric() || c == '#' => {
                self.bump();
                Ok(vec![Node::new(&c.to_string())])
            }
            _ => Err(self.error("expected an index after `_` or `^`")),
        }
    }
}

/// Checks that brackets balance; used by the session to decide whether a
/// statement is complete.
pub(crate) fn unbalanced_at(text: &str) -> Option<usize> {
    let mut stack = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => stack.push((c, i)),
            ')' | '}' | ']' => {
                let open = match c {
                    ')' => '(',
                    '}' => '{',
                    _ => '[',
                };
                match stack.pop() {
                    Some((o, _)) if o == open => {}
                    _ => return Some(i),
                }
            }
            _ => {}
        }
    }
    stack.first().map(|_| text.len())
}
