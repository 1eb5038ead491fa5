use super::{BaseTuple, Group, Payload};
use crate::error::{GroupError, Result};

/// Multiplication law of `G ≀ Zₙ` on `(f, k)` pairs:
/// `(f,k)·(f′,k′) = (h, k+k′)` with `h(i) = f(i)·f′(i−k)`, indices mod `n`.
pub(crate) struct WreathLaw {
    base: Group,
    arity: usize,
}

impl WreathLaw {
    pub(crate) fn new(base: Group, arity: usize) -> Result<Self> {
        if base.table().is_none() {
            return Err(GroupError::precondition("wreath base must be a dense-table group"));
        }
        if arity < 1 || arity > u16::MAX as usize {
            return Err(GroupError::precondition(format!("arity {arity} out of range")));
        }
        Ok(WreathLaw { base, arity })
    }

    pub(crate) fn base(&self) -> &Group {
        &self.base
    }

    pub(crate) fn arity(&self) -> usize {
        self.arity
    }

    /// `n·|G|ⁿ`, or `None` on overflow.
    pub(crate) fn order_u128(&self) -> Option<u128> {
        let g = self.base.order() as u128;
        let mut acc: u128 = self.arity as u128;
        for _ in 0..self.arity {
            acc = acc.checked_mul(g)?;
        }
        Some(acc)
    }

    pub(crate) fn order_usize(&self) -> Option<usize> {
        self.order_u128().and_then(|o| usize::try_from(o).ok())
    }

    pub(crate) fn identity_payload(&self) -> Payload {
        let e = self.base.table().unwrap().identity();
        Payload::Wreath {
            shift: 0,
            base: std::iter::repeat(e).take(self.arity).collect(),
        }
    }

    /// Each base generator in coordinate 0, plus the pure shift.
    pub(crate) fn generator_payloads(&self) -> Vec<Payload> {
        let e = self.base.table().unwrap().identity();
        let mut out: Vec<Payload> = self
            .base
            .generators()
            .iter()
            .map(|g| {
                let mut f: BaseTuple = std::iter::repeat(e).take(self.arity).collect();
                f[0] = g.index();
                Payload::Wreath { shift: 0, base: f }
            })
            .collect();
        if self.arity > 1 {
            out.push(Payload::Wreath {
                shift: 1,
                base: std::iter::repeat(e).take(self.arity).collect(),
            });
        }
        out
    }

    pub(crate) fn is_valid(&self, shift: u16, base: &BaseTuple) -> bool {
        let order = self.base.order();
        (shift as usize) < self.arity && base.len() == self.arity && base.iter().all(|&x| (x as usize) < order)
    }

    #[inline]
    pub(crate) fn mul(&self, k1: u16, f1: &BaseTuple, k2: u16, f2: &BaseTuple) -> Payload {
        let t = self.base.table().unwrap();
        let n = self.arity;
        let k1 = k1 as usize;
        let h: BaseTuple = (0..n)
            .map(|i| t.mul(f1[i], f2[(i + n - k1) % n]))
            .collect();
        Payload::Wreath {
            shift: ((k1 + k2 as usize) % n) as u16,
            base: h,
        }
    }

    /// `(f,k)⁻¹ = (f′, −k)` with `f′(j) = f(j+k)⁻¹`.
    pub(crate) fn inverse(&self, k: u16, f: &BaseTuple) -> Payload {
        let t = self.base.table().unwrap();
        let n = self.arity;
        let k = k as usize;
        let h: BaseTuple = (0..n).map(|j| t.inv(f[(j + k) % n])).collect();
        Payload::Wreath {
            shift: ((n - k) % n) as u16,
            base: h,
        }
    }

    /// All payloads in `(k, f)` lexicographic order.
    pub(crate) fn enumerate(&self) -> impl Iterator<Item = Payload> + '_ {
        let n = self.arity;
        let g = self.base.order() as u16;
        (0..n as u16).flat_map(move |k| {
            let mut cur: Option<BaseTuple> = Some(std::iter::repeat(0).take(n).collect());
            std::iter::from_fn(move || {
                let out = cur.clone()?;
                let mut next = out.clone();
                let mut i = n;
                loop {
                    if i == 0 {
                        cur = None;
                        break;
                    }
                    i -= 1;
                    next[i] += 1;
                    if next[i] < g {
                        cur = Some(next);
                        break;
                    }
                    next[i] = 0;
                }
                Some(Payload::Wreath { shift: k, base: out })
            })
        })
    }

    pub(crate) fn render(&self, shift: u16, base: &BaseTuple) -> String {
        let t = self.base.table().unwrap();
        let coords: Vec<&str> = base.iter().map(|&i| t.label(i)).collect();
        format!("[{};{}]", coords.join(","), shift)
    }

    pub(crate) fn parse(&self, text: &str) -> Result<Payload> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| GroupError::parse(0, "wreath element must look like [f0,...,f_{n-1};k]"))?;
        let parts = split_top_level(inner, ';');
        if parts.len() != 2 {
            return Err(GroupError::parse(1, "expected exactly one ';' separating the shift"));
        }
        let shift_text = parts[1].1.trim();
        let shift: i64 = shift_text
            .parse()
            .map_err(|_| GroupError::parse(1 + parts[1].0, format!("bad shift '{shift_text}'")))?;
        let coords = split_top_level(parts[0].1, ',');
        if coords.len() != self.arity {
            return Err(GroupError::parse(
                1,
                format!("expected {} coordinates, found {}", self.arity, coords.len()),
            ));
        }
        let mut base = BaseTuple::new();
        for (offset, c) in coords {
            let e = self.base.parse_element(c).map_err(|e| match e {
                GroupError::Parse { position, message } => GroupError::Parse {
                    position: position + 1 + offset,
                    message,
                },
                other => other,
            })?;
            base.push(e.index());
        }
        Ok(Payload::Wreath {
            shift: shift.rem_euclid(self.arity as i64) as u16,
            base,
        })
    }
}

/// Splits on `sep` outside of any bracket nesting; yields `(offset, piece)`.
fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}
