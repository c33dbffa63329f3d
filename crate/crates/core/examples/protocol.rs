//! Feeds canned JSON-lines requests through the protocol server and prints
//! the replies.

use std::io::Cursor;

use fieldcas::session::serve_protocol;
use fieldcas::Session;

fn main() -> std::io::Result<()> {
    let requests = [
        r#"{"id": 1, "kind": "input", "body": "{a,b,c,d}::Indices(vector). R_{a b c d}::RiemannTensor."}"#,
        r#"{"id": 2, "kind": "input", "body": "P:= R_{a b c d}; @young_project!(%);"}"#,
        r#"{"id": 2, "kind": "input", "body": "stale id"}"#,
        "not json",
    ];
    let mut session = Session::new();
    serve_protocol(&mut session, Cursor::new(requests.join("\n")), std::io::stdout().lock())
}
