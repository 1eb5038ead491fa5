use std::collections::{HashMap, HashSet};

use super::{Element, Group, MAX_TABLE_ORDER};
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// How table labels are spelled and parsed.
pub(crate) enum Notation {
    /// Labels are the integers `0..n`.
    Cyclic,
    /// `r^k` and `s*r^k`.
    Dihedral { p: usize },
    /// 1-based cycle notation of the carried permutations.
    Cycles,
    /// `(a|b)` over two component groups.
    Product(Group, Group),
    /// Exact label lookup only.
    Plain,
}

struct PermData {
    degree: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u16>,
}

/// Dense multiplication table with 16-bit entries.
pub(crate) struct CayleyTable {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: u16,
    labels: Vec<String>,
    lookup: HashMap<String, u16>,
    notation: Notation,
    perms: Option<PermData>,
}

impl CayleyTable {
    fn assemble(
        order: usize,
        mul: Vec<u16>,
        identity: u16,
        labels: Vec<String>,
        notation: Notation,
        perms: Option<PermData>,
    ) -> Self {
        let mut inv = vec![0u16; order];
        for (i, slot) in inv.iter_mut().enumerate() {
            let row = &mul[i * order..(i + 1) * order];
            *slot = row
                .iter()
                .position(|&v| v == identity)
                .expect("every row of a group table contains the identity") as u16;
        }
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u16))
            .collect();
        CayleyTable {
            order,
            mul,
            inv,
            identity,
            labels,
            lookup,
            notation,
            perms,
        }
    }

    pub(crate) fn from_permutations(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_TABLE_ORDER);
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::precondition(format!(
                    "generator {g} has degree {} not {degree}",
                    g.degree()
                )));
            }
        }
        let mut gens: Vec<Permutation> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        gens.sort();
        gens.dedup();

        let id = Permutation::identity(degree);
        let mut perms = vec![id];
        let mut index: HashMap<Permutation, u16> = HashMap::new();
        index.insert(id, 0);
        let mut layer = vec![id];
        while !layer.is_empty() {
            let mut next_layer = Vec::new();
            let mut fresh = HashSet::new();
            for cur in &layer {
                for g in &gens {
                    let nxt = cur.then(g);
                    if !index.contains_key(&nxt) && fresh.insert(nxt) {
                        next_layer.push(nxt);
                        if perms.len() + next_layer.len() > cap {
                            return Err(GroupError::ClosureTooLarge {
                                cap,
                                partial: perms.len() + next_layer.len(),
                            });
                        }
                    }
                }
            }
            next_layer.sort();
            for p in &next_layer {
                index.insert(*p, perms.len() as u16);
                perms.push(*p);
            }
            layer = next_layer;
        }

        let n = perms.len();
        let mut mul = vec![0u16; n * n];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                mul[i * n + j] = index[&a.then(b)];
            }
        }
        let labels = perms.iter().map(|p| p.to_cycle_string(1)).collect();
        Ok(CayleyTable::assemble(
            n,
            mul,
            0,
            labels,
            Notation::Cycles,
            Some(PermData {
                degree,
                perms,
                index,
            }),
        ))
    }

    pub(crate) fn cyclic(n: usize) -> Self {
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u16;
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        CayleyTable::assemble(n, mul, 0, labels, Notation::Cyclic, None)
    }

    pub(crate) fn direct_product(a: &Group, b: &Group) -> Result<Self> {
        let (ta, tb) = match (a.table(), b.table()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(GroupError::precondition("direct product needs table-backed factors")),
        };
        let (na, nb) = (ta.order(), tb.order());
        let n = na * nb;
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::ClosureTooLarge {
                cap: MAX_TABLE_ORDER,
                partial: n,
            });
        }
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                let pa = ta.mul(xa as u16, ya as u16) as usize;
                let pb = tb.mul(xb as u16, yb as u16) as usize;
                mul[x * n + y] = (pa * nb + pb) as u16;
            }
        }
        let labels = (0..n)
            .map(|x| format!("({}|{})", ta.label((x / nb) as u16), tb.label((x % nb) as u16)))
            .collect();
        let identity = (ta.identity() as usize * nb + tb.identity() as usize) as u16;
        Ok(CayleyTable::assemble(
            n,
            mul,
            identity,
            labels,
            Notation::Product(a.clone(), b.clone()),
            None,
        ))
    }

    /// Table over a list of distinct elements of `parent` closed under its law.
    pub(crate) fn from_elements(parent: &Group, elems: &[Element], labels: Vec<String>) -> Result<Self> {
        let n = elems.len();
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::ClosureTooLarge {
                cap: MAX_TABLE_ORDER,
                partial: n,
            });
        }
        let index: HashMap<&Element, u16> = elems.iter().enumerate().map(|(i, e)| (e, i as u16)).collect();
        let mut mul = vec![0u16; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = parent.mul(a, b);
                mul[i * n + j] = *index
                    .get(&c)
                    .ok_or_else(|| GroupError::precondition("element set is not closed"))?;
            }
        }
        let identity = index[&parent.identity()];
        let perms = parent.degree().and_then(|degree| {
            let perms: Option<Vec<Permutation>> = elems.iter().map(|e| parent.permutation_of(e)).collect();
            perms.map(|perms| {
                let index = perms.iter().enumerate().map(|(i, p)| (*p, i as u16)).collect();
                PermData { degree, perms, index }
            })
        });
        Ok(CayleyTable::assemble(n, mul, identity, labels, Notation::Plain, perms))
    }

    /// Table given directly (used for quotients); rows must form a group law.
    pub(crate) fn from_raw(order: usize, mul: Vec<u16>, identity: u16, labels: Vec<String>) -> Self {
        CayleyTable::assemble(order, mul, identity, labels, Notation::Plain, None)
    }

    pub(crate) fn relabel(mut self, labels: Vec<String>, notation: Notation) -> Self {
        assert_eq!(labels.len(), self.order);
        self.lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u16))
            .collect();
        self.labels = labels;
        self.notation = notation;
        self
    }

    #[inline]
    pub(crate) fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub(crate) fn identity(&self) -> u16 {
        self.identity
    }

    #[inline]
    pub(crate) fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub(crate) fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub(crate) fn label(&self, a: u16) -> &str {
        &self.labels[a as usize]
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    pub(crate) fn perm(&self, a: u16) -> Option<Permutation> {
        self.perms.as_ref().map(|p| p.perms[a as usize])
    }

    pub(crate) fn perm_index(&self, p: &Permutation) -> Option<u16> {
        self.perms.as_ref().and_then(|d| d.index.get(p).copied())
    }

    pub(crate) fn parse(&self, text: &str) -> Result<u16> {
        let trimmed = text.trim();
        if let Some(&i) = self.lookup.get(trimmed) {
            return Ok(i);
        }
        let not_found = || GroupError::parse(0, format!("'{trimmed}' is not an element of this group"));
        match &self.notation {
            Notation::Plain => Err(not_found()),
            Notation::Cyclic => {
                let v: i64 = trimmed
                    .parse()
                    .map_err(|_| GroupError::parse(0, format!("expected an integer, found '{trimmed}'")))?;
                Ok(v.rem_euclid(self.order as i64) as u16)
            }
            Notation::Cycles => {
                let degree = self.degree().unwrap_or(0);
                let p = Permutation::parse_cycles(trimmed, degree, 1)?;
                self.perm_index(&p).ok_or_else(not_found)
            }
            Notation::Dihedral { p } => {
                let (refl, k) = parse_dihedral(trimmed)?;
                let label = dihedral_label(refl, k.rem_euclid(*p as i64) as usize);
                self.lookup.get(&label).copied().ok_or_else(not_found)
            }
            Notation::Product(a, b) => {
                let (left, right) = split_pair(trimmed)?;
                let x = a.parse_element(left).map_err(|e| shift_parse(e, 1))?;
                let y = b.parse_element(right).map_err(|e| shift_parse(e, left.len() + 2))?;
                Ok((x.index() as usize * b.order() + y.index() as usize) as u16)
            }
        }
    }
}

fn shift_parse(e: GroupError, by: usize) -> GroupError {
    match e {
        GroupError::Parse { position, message } => GroupError::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

pub(crate) fn dihedral_label(reflection: bool, k: usize) -> String {
    if reflection {
        format!("s*r^{k}")
    } else {
        format!("r^{k}")
    }
}

/// Accepts `1`, `e`, `r`, `rK`, `r^K`, `s`, `s*r…`, `sr…`.
fn parse_dihedral(text: &str) -> Result<(bool, i64)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" || t == "e" {
        return Ok((false, 0));
    }
    let (refl, rest, offset) = if let Some(r) = t.strip_prefix("s*") {
        (true, r, 2)
    } else if let Some(r) = t.strip_prefix('s') {
        (true, r, 1)
    } else {
        (false, t.as_str(), 0)
    };
    if rest.is_empty() {
        return if refl {
            Ok((true, 0))
        } else {
            Err(GroupError::parse(0, "empty dihedral element"))
        };
    }
    let Some(exp) = rest.strip_prefix('r') else {
        return Err(GroupError::parse(offset, format!("expected 'r' in '{text}'")));
    };
    let exp = exp.strip_prefix('^').unwrap_or(exp);
    if exp.is_empty() {
        return Ok((refl, 1));
    }
    let k: i64 = exp
        .parse()
        .map_err(|_| GroupError::parse(offset + 1, format!("bad exponent in '{text}'")))?;
    Ok((refl, k))
}

/// Splits `(a|b)` at the top-level bar.
fn split_pair(text: &str) -> Result<(&str, &str)> {
    let inner = text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| GroupError::parse(0, "expected '(a|b)'"))?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '|' if depth == 0 => return Ok((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    Err(GroupError::parse(text.len(), "missing '|' in product element"))
}
