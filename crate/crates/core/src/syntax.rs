//! Textual grammars for operations, arrows, spans and markings.
//!
//! ```text
//! tree      := "." | "(" tree ... tree ")"            exactly k children
//! cut tree  := "." | "[" axis low high "]"
//! box       := "b(" e ":" a ("," e ":" a)* ")"
//! pattern   := "{" box ("," box)* "}"
//! operation := tree | cut tree | pattern | caret | left-comb | right-comb | id
//! arrow     := ["p[" i ("," i)* "]" ";"] operation ("," operation)*
//! span      := "<" arrow ">" "|" "<" arrow ">"       angle brackets optional
//! marking   := "m[" (i ":" symbol)* "]"              symbol "-" leaves i unmarked
//! marked    := "<" arrow ">" "@" marking
//! ```

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::backend::{Backend, Cell, CutTree, Operation, Placement};
use crate::category::{Arrow, Permutation};
use crate::error::{Error, Result};
use crate::fractions::Span;
use crate::markings::{MarkedArrow, Marking};

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Split at `sep` outside of any brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' | '<' | '⟨' => depth += 1,
            ')' | ']' | '}' | '>' | '⟩' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Drop one pair of surrounding angle brackets, if present.
fn unwrap_angles(s: &str) -> &str {
    let t = s.trim();
    for (open, close) in [('⟨', '⟩'), ('<', '>')] {
        if let Some(inner) = t.strip_prefix(open).and_then(|r| r.strip_suffix(close)) {
            return inner.trim();
        }
    }
    t
}

pub fn parse_permutation(s: &str) -> Result<Permutation> {
    let inner = s
        .trim()
        .strip_prefix("p[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected p[..], got {s:?}")))?;
    let imgs = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
            .collect::<Result<Vec<_>>>()?
    };
    Permutation::new(imgs)
}

pub fn format_permutation(p: &Permutation) -> String {
    let items: Vec<String> = p.images().iter().map(usize::to_string).collect();
    format!("p[{}]", items.join(","))
}

struct Chars<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Chars<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(d) if d == c => Ok(()),
            other => err(format!(
                "expected {:?} at byte {}, found {:?}",
                c as char,
                self.pos,
                other.map(|d| d as char)
            )),
        }
    }

    fn number(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected a number at byte {start}"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn done(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => err(format!("unexpected {:?} at byte {}", c as char, self.pos)),
        }
    }
}

fn tree_cells(c: &mut Chars, k: u32, at: &Cell, out: &mut Vec<Cell>) -> Result<()> {
    match c.bump() {
        Some(b'.') => {
            out.push(at.clone());
            Ok(())
        }
        Some(b'(') => {
            let mut n = 0u32;
            while c.peek() != Some(b')') {
                if n >= k {
                    return err(format!("a node has exactly {k} children"));
                }
                tree_cells(c, k, &at.child(0, n as u8), out)?;
                n += 1;
            }
            c.expect(b')')?;
            if n != k {
                return err(format!("a node has exactly {k} children, got {n}"));
            }
            Ok(())
        }
        other => err(format!("expected '.' or '(' in tree, found {:?}", other.map(|d| d as char))),
    }
}

fn cut_tree(c: &mut Chars) -> Result<CutTree> {
    match c.bump() {
        Some(b'.') => Ok(CutTree::Leaf),
        Some(b'[') => {
            let axis: usize = c.number()?.parse().map_err(|_| Error::Parse("axis".into()))?;
            let low = cut_tree(c)?;
            let high = cut_tree(c)?;
            c.expect(b']')?;
            Ok(CutTree::node(axis, vec![low, high]))
        }
        other => err(format!("expected '.' or '[' in cut tree, found {:?}", other.map(|d| d as char))),
    }
}

fn parse_box(c: &mut Chars, backend: &Backend) -> Result<Cell> {
    c.expect(b'b')?;
    c.expect(b'(')?;
    let mut pairs = Vec::new();
    loop {
        let e: usize = c.number()?.parse().map_err(|_| Error::Parse("exponent".into()))?;
        c.expect(b':')?;
        let a: BigUint = c.number()?.parse().map_err(|_| Error::Parse("offset".into()))?;
        pairs.push((e, a));
        match c.bump() {
            Some(b',') => continue,
            Some(b')') => break,
            other => return err(format!("expected ',' or ')' in box, found {:?}", other.map(|d| d as char))),
        }
    }
    if pairs.len() != backend.dim() {
        return err(format!("box has {} axes, backend has {}", pairs.len(), backend.dim()));
    }
    Cell::from_offsets(&pairs, backend.base()).ok_or_else(|| Error::Parse("box offset out of range".into()))
}

fn alias(backend: &Backend, name: &str) -> Option<Operation> {
    let caret = backend.caret();
    let last = caret.arity() - 1;
    match name {
        "id" => Some(backend.identity_op()),
        "caret" => Some(caret),
        "left-comb" => Some(caret.compose(0, &caret).expect("slot 0")),
        "right-comb" => Some(caret.compose(last, &caret).expect("last slot")),
        _ => None,
    }
}

/// One operation; the input order is kept as written.
pub fn parse_operation(backend: &Backend, s: &str) -> Result<Operation> {
    let t = s.trim();
    if let Some(op) = alias(backend, t) {
        return Ok(op);
    }
    let mut c = Chars { s: t.as_bytes(), pos: 0 };
    let op = match c.peek() {
        Some(b'{') => {
            c.bump();
            let mut cells = vec![parse_box(&mut c, backend)?];
            while c.peek() == Some(b',') {
                c.bump();
                cells.push(parse_box(&mut c, backend)?);
            }
            c.expect(b'}')?;
            c.done()?;
            return backend.validate_pattern(cells);
        }
        Some(b'[') => {
            let tree = cut_tree(&mut c)?;
            c.done()?;
            if backend.base() != 2 {
                return err("cut trees need binary cuts");
            }
            return backend.operation_from_cut_tree(&tree);
        }
        Some(b'.') | Some(b'(') if backend.is_tree() || t == "." => {
            let mut cells = Vec::new();
            tree_cells(&mut c, backend.base(), &Cell::unit(backend.dim()), &mut cells)?;
            Operation::from_cells_unchecked(cells)
        }
        _ => return err(format!("cannot read operation {t:?}")),
    };
    c.done()?;
    Ok(op)
}

fn format_tree(cells: &[Cell], depth: usize, k: u32) -> String {
    if cells.len() == 1 && cells[0].depth() == depth {
        return ".".into();
    }
    let parts: Vec<String> = (0..k as u8)
        .map(|d| {
            let sub: Vec<Cell> = cells.iter().filter(|c| c.axis(0)[depth] == d).cloned().collect();
            format_tree(&sub, depth + 1, k)
        })
        .collect();
    format!("({})", parts.join(" "))
}

pub fn format_cell(backend: &Backend, c: &Cell) -> String {
    let items: Vec<String> = (0..c.dim())
        .map(|a| format!("{}:{}", c.exponent(a), c.offset(a, backend.base())))
        .collect();
    format!("b({})", items.join(","))
}

/// Trees print in the tree grammar, cube patterns as box lists.
pub fn format_operation(backend: &Backend, op: &Operation) -> String {
    if backend.is_tree() && op.is_canonical() {
        return format_tree(op.cells(), 0, backend.base());
    }
    if op.is_identity() {
        return ".".into();
    }
    let items: Vec<String> = op.cells().iter().map(|c| format_cell(backend, c)).collect();
    format!("{{{}}}", items.join(","))
}

pub fn parse_arrow(backend: &Backend, s: &str) -> Result<Arrow> {
    let s = unwrap_angles(s);
    let parts = split_top(s, ';');
    let (perm, forest_src) = match parts.as_slice() {
        [forest] => (None, *forest),
        [perm, forest] => (Some(parse_permutation(perm)?), *forest),
        _ => return err(format!("too many ';' in arrow {s:?}")),
    };
    let forest = split_top(forest_src, ',')
        .into_iter()
        .map(|f| parse_operation(backend, f))
        .collect::<Result<Vec<_>>>()?;
    let total = forest.iter().map(Operation::arity).sum();
    let perm = perm.unwrap_or_else(|| Permutation::identity(total));
    let arrow = Arrow::new(perm, forest, backend.dim())?;
    backend.check_arrow(&arrow)?;
    Ok(arrow)
}

pub fn format_arrow(backend: &Backend, a: &Arrow) -> String {
    let forest: Vec<String> = a.forest().iter().map(|op| format_operation(backend, op)).collect();
    if a.perm().is_identity() {
        forest.join(" , ")
    } else {
        format!("{} ; {}", format_permutation(a.perm()), forest.join(" , "))
    }
}

pub fn parse_span(backend: &Backend, s: &str) -> Result<Span> {
    let parts = split_top(s.trim(), '|');
    let [den, num] = parts.as_slice() else {
        return err(format!("a span is 'den | num', got {s:?}"));
    };
    let span = Span::new(parse_arrow(backend, den)?, parse_arrow(backend, num)?)?;
    backend.check_span(&span)?;
    Ok(span)
}

pub fn format_span(backend: &Backend, g: &Span) -> String {
    format!("⟨{}⟩ | ⟨{}⟩", format_arrow(backend, g.den()), format_arrow(backend, g.num()))
}

fn symbol_name(s: u32) -> String {
    if s < 26 {
        ((b'a' + s as u8) as char).to_string()
    } else {
        format!("s{s}")
    }
}

pub fn parse_marking(s: &str) -> Result<Marking> {
    let inner = s
        .trim()
        .strip_prefix("m[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected m[..], got {s:?}")))?;
    let mut entries: Vec<(usize, Option<String>)> = Vec::new();
    for item in inner.split_whitespace() {
        let (i, sym) = item
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("marking entry {item:?} is not i:symbol")))?;
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad coordinate {i:?}")))?;
        if sym.is_empty() || !sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return err(format!("bad symbol {sym:?}"));
        }
        entries.push((i, (sym != "-").then(|| sym.to_string())));
    }
    if entries.iter().enumerate().any(|(pos, (i, _))| pos != *i) {
        return err("marking coordinates must be listed as 0, 1, 2, ..");
    }
    let mut ids: HashMap<String, u32> = HashMap::new();
    let symbols = entries
        .into_iter()
        .map(|(_, s)| {
            s.map(|s| {
                let next = ids.len() as u32;
                *ids.entry(s).or_insert(next)
            })
        })
        .collect();
    Ok(Marking::new(symbols))
}

pub fn format_marking(m: &Marking) -> String {
    let items: Vec<String> = m
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{i}:{}", s.map_or("-".to_string(), symbol_name)))
        .collect();
    format!("m[{}]", items.join(" "))
}

pub fn parse_marked_arrow(backend: &Backend, s: &str) -> Result<MarkedArrow> {
    let parts = split_top(s.trim(), '@');
    let [arrow, marking] = parts.as_slice() else {
        return err(format!("a marked arrow is 'arrow @ marking', got {s:?}"));
    };
    let ma = MarkedArrow::new(parse_arrow(backend, arrow)?, parse_marking(marking)?)?;
    if !backend.is_symmetric() && !ma.marking().is_ordered() {
        return Err(Error::Flavor("planar markings must be ordered".into()));
    }
    Ok(ma)
}

pub fn format_marked_arrow(backend: &Backend, ma: &MarkedArrow) -> String {
    format!("⟨{}⟩ @ {}", format_arrow(backend, ma.arrow()), format_marking(ma.marking()))
}

/// Human-readable realized cell: a product of half-open intervals.
pub fn format_placement(backend: &Backend, p: &Placement) -> String {
    let b = backend.base();
    let axes: Vec<String> = (0..p.cell.dim())
        .map(|a| {
            let e = p.cell.exponent(a) as u32;
            let lo = p.cell.offset(a, b);
            let den = BigUint::from(b).pow(e);
            let hi = &lo + 1u32;
            if e == 0 {
                "[0,1)".to_string()
            } else {
                format!("[{lo}/{den},{hi}/{den})")
            }
        })
        .collect();
    format!("{}:{}", p.target, axes.join("x"))
}
