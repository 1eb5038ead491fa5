//! Fixed-capacity permutations of at most [`MAX_DEGREE`] points.
//!
//! Points are stored as bytes; unused slots beyond the degree hold the
//! identity so that derived ordering is lexicographic on the image array.
//! Products act on the right: `a.then(b)` maps `i` to `b(a(i))`.

use std::fmt;

use crate::error::{GroupError, Result};

pub const MAX_DEGREE: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

const IDENTITY_IMAGES: [u8; MAX_DEGREE] = {
    let mut a = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            degree: degree as u8,
            images: IDENTITY_IMAGES,
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(GroupError::precondition(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Permutation::identity(degree);
        for (i, &img) in images.iter().enumerate() {
            if img >= degree || seen[img] {
                return Err(GroupError::precondition(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[img] = true;
            p.images[i] = img as u8;
        }
        Ok(p)
    }

    /// Builds a permutation from disjoint cycles given in 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(GroupError::precondition(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = [false; MAX_DEGREE];
        for cycle in cycles {
            for (j, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(GroupError::precondition(format!(
                        "point {pt} outside degree {degree}"
                    )));
                }
                if used[pt] {
                    return Err(GroupError::precondition(format!(
                        "point {pt} repeated in cycles"
                    )));
                }
                used[pt] = true;
                images[pt] = cycle[(j + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree()]
    }

    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// Right-action product: first `self`, then `other`.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree, other.degree);
        let mut images = IDENTITY_IMAGES;
        for (i, slot) in images.iter_mut().enumerate().take(self.degree()) {
            *slot = other.images[self.images[i] as usize];
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree() {
            images[self.images[i] as usize] = i as u8;
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    #[inline]
    pub fn square(&self) -> Permutation {
        self.then(self)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = *self;
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Conjugate `y⁻¹ · self · y`.
    pub fn conjugate_by(&self, y: &Permutation) -> Permutation {
        y.inverse().then(self).then(y)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, num_lcm)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) == i).collect()
    }

    /// Cycle notation with points shifted by `base` (0 or 1); identity is `()`.
    pub fn to_cycle_string(&self, base: usize) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + base).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `()`; points are
    /// shifted down by `base`.
    pub fn parse_cycles(text: &str, degree: usize, base: usize) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(GroupError::parse(0, "empty permutation"));
        }
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(GroupError::parse(i, "expected '('"));
            }
            i += 1;
            let mut cycle = Vec::new();
            loop {
                while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(GroupError::parse(i, "unterminated cycle"));
                }
                if bytes[i] == b')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(GroupError::parse(i, "expected point number"));
                }
                let pt: usize = text[start..i]
                    .parse()
                    .map_err(|_| GroupError::parse(start, "point number out of range"))?;
                if pt < base || pt - base >= degree {
                    return Err(GroupError::parse(
                        start,
                        format!("point {pt} outside {base}..={}", (degree + base).saturating_sub(1)),
                    ));
                }
                cycle.push(pt - base);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            skip_ws(&mut i);
        }
        Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
            GroupError::Precondition(m) => GroupError::parse(0, m),
            other => other,
        })
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn num_lcm(a: u64, b: u64) -> u64 {
    a / num_gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(0))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// Lexicographic enumeration of all permutations of a given degree.
pub struct LexPermutations {
    current: Option<Vec<u8>>,
}

impl LexPermutations {
    pub fn new(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        LexPermutations {
            current: Some((0..degree as u8).collect()),
        }
    }

    /// Permutations whose image of point 0 is `first`, in lexicographic order.
    pub fn with_first(degree: usize, first: usize) -> impl Iterator<Item = Permutation> {
        assert!(first < degree);
        let mut rest: Vec<u8> = (0..degree as u8).filter(|&v| v as usize != first).collect();
        rest.sort_unstable();
        let mut start = vec![first as u8];
        start.extend(rest);
        LexPermutations {
            current: Some(start),
        }
        .take_while(move |p| p.image(0) == first)
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.as_mut()?;
        let mut images = IDENTITY_IMAGES;
        images[..cur.len()].copy_from_slice(cur);
        let out = Permutation {
            degree: cur.len() as u8,
            images,
        };
        // next_permutation
        let n = cur.len();
        let mut i = n.saturating_sub(1);
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            self.current = None;
        } else {
            let mut j = n - 1;
            while cur[j] <= cur[i - 1] {
                j -= 1;
            }
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        Some(out)
    }
}
