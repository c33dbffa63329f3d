//! Newline-delimited JSON protocol for front ends.
//!
//! Each request is one line `{"id": 1, "kind": "input", "body": "C:= A A;"}`.
//! The server answers with a `busy` status, exactly one `output` or `error`
//! message, and an `idle` status, all carrying the request id.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::Session;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MessageKind {
    Input,
    Output,
    Error,
    Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolMessage {
    pub id: u64,
    pub kind: MessageKind,
    pub body: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tex: Option<String>,
}

impl ProtocolMessage {
    fn new(id: u64, kind: MessageKind, body: impl Into<String>) -> Self {
        ProtocolMessage {
            id,
            kind,
            body: body.into(),
            tex: None,
        }
    }
}

fn send<W: Write>(out: &mut W, msg: &ProtocolMessage) -> std::io::Result<()> {
    let line = serde_json::to_string(msg).map_err(std::io::Error::other)?;
    writeln!(out, "{line}")?;
    out.flush()
}

/// Serves requests from `input` until it closes. Malformed lines and
/// out-of-order ids get an error reply and leave the session untouched.
pub fn serve_protocol<R: BufRead, W: Write>(session: &mut Session, input: R, mut output: W) -> std::io::Result<()> {
    let mut last_id: Option<u64> = None;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let msg: ProtocolMessage = match serde_json::from_str(&line) {
            Ok(m) => m,
            Err(_) => {
                let id = serde_json::from_str::<serde_json::Value>(&line)
                    .ok()
                    .and_then(|v| v.get("id").and_then(serde_json::Value::as_u64))
                    .unwrap_or(0);
                send(&mut output, &ProtocolMessage::new(id, MessageKind::Error, "bad message"))?;
                continue;
            }
        };
        if msg.kind != MessageKind::Input || last_id.is_some_and(|l| msg.id <= l) {
            send(&mut output, &ProtocolMessage::new(msg.id, MessageKind::Error, "bad message"))?;
            continue;
        }
        last_id = Some(msg.id);
        send(&mut output, &ProtocolMessage::new(msg.id, MessageKind::Status, "busy"))?;
        let reply = match session.eval_line(&msg.body) {
            Ok(printed) => {
                let plain: Vec<String> = printed.iter().map(|p| p.plain.clone()).collect();
                let tex: Vec<String> = printed.iter().map(|p| p.tex.clone()).collect();
                ProtocolMessage {
                    id: msg.id,
                    kind: MessageKind::Output,
                    body: plain.join("\n"),
                    tex: Some(tex.join("\n")),
                }
            }
            Err(e) => ProtocolMessage::new(msg.id, MessageKind::Error, e.to_string()),
        };
        send(&mut output, &reply)?;
        send(&mut output, &ProtocolMessage::new(msg.id, MessageKind::Status, "idle"))?;
    }
    Ok(())
}
