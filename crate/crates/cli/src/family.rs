//! Text form of a set family: `KIND PARAM [PARAM] SIGNS [@ p=P [n=N]]`,
//! e.g. `T 1 3 --`, `S1 0 +`, `A 2 5 +- @ p=13`.

use wilson_core::charsets::{SetFamily, Sign, SignPair};
use wilson_core::{Error, FieldCtx, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    A,
    S1,
    S2,
    T,
}

impl Kind {
    fn arity(self) -> usize {
        if self == Kind::S1 {
            1
        } else {
            2
        }
    }
}

/// A token and its byte offset in the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tok<'a> {
    pos: usize,
    text: &'a str,
}

/// A family spec before its parameters are read in a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec<'a> {
    kind: Kind,
    params: Vec<Tok<'a>>,
    signs: Tok<'a>,
    pub p: Option<u64>,
    pub n: Option<u32>,
}

fn tokens(s: &str, base: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain([(s.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push(Tok { pos: base + b, text: &s[b..i] });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

pub fn parse(text: &str) -> Result<FamilySpec<'_>> {
    let (body, field) = match text.find('@') {
        Some(at) => (&text[..at], Some((at + 1, &text[at + 1..]))),
        None => (text, None),
    };
    let toks = tokens(body, 0);
    let head = toks.first().ok_or_else(|| err(0, "empty family spec"))?;
    let kind = match head.text {
        "A" => Kind::A,
        "S1" => Kind::S1,
        "S2" => Kind::S2,
        "T" => Kind::T,
        other => return Err(err(head.pos, format!("unknown family '{other}', expected A, S1, S2 or T"))),
    };
    let want = kind.arity() + 2;
    if toks.len() != want {
        let pos = toks.get(want).map_or(body.trim_end().len(), |t| t.pos);
        return Err(err(pos, format!("{} takes {} parameter(s) and a sign", head.text, kind.arity())));
    }
    let signs = toks[want - 1].clone();
    let sign_len = if kind == Kind::S1 { 1 } else { 2 };
    if signs.text.chars().count() != sign_len || !signs.text.chars().all(|c| Sign::parse(c).is_some()) {
        return Err(err(signs.pos, format!("expected {sign_len} sign(s) from '+' and '-', got '{}'", signs.text)));
    }
    let mut spec = FamilySpec { kind, params: toks[1..want - 1].to_vec(), signs, p: None, n: None };
    if let Some((base, rest)) = field {
        for tok in tokens(rest, base) {
            let (key, value) = tok.text.split_once('=').ok_or_else(|| err(tok.pos, "expected key=value"))?;
            let vpos = tok.pos + key.len() + 1;
            match key {
                "p" => spec.p = Some(value.parse().map_err(|_| err(vpos, format!("bad characteristic '{value}'")))?),
                "n" => spec.n = Some(value.parse().map_err(|_| err(vpos, format!("bad degree '{value}'")))?),
                _ => return Err(err(tok.pos, format!("unknown field key '{key}', expected p or n"))),
            }
        }
        if spec.p.is_none() {
            return Err(err(base, "field suffix needs p=..."));
        }
    }
    Ok(spec)
}

impl FamilySpec<'_> {
    /// Reads the parameters in `ctx` and checks the family's constraints.
    pub fn resolve(&self, ctx: &FieldCtx) -> Result<SetFamily> {
        let mut params = Vec::new();
        for tok in &self.params {
            let x = ctx.parse(tok.text).map_err(|e| match e {
                Error::Parse { pos, msg } => err(tok.pos + pos, msg),
                other => other,
            })?;
            params.push(x);
        }
        let s: Vec<Sign> = self.signs.text.chars().filter_map(Sign::parse).collect();
        let fam = match self.kind {
            Kind::S1 => SetFamily::S1 { k: params[0], sign: s[0] },
            kind => {
                let signs = SignPair::new(s[0], s[1]);
                let (x, y) = (params[0], params[1]);
                match kind {
                    Kind::A => SetFamily::A { k: x, l: y, signs },
                    Kind::S2 => SetFamily::S2 { k: x, l: y, signs },
                    _ => SetFamily::T { j: x, l: y, signs },
                }
            }
        };
        fam.validate(ctx)?;
        Ok(fam)
    }
}
