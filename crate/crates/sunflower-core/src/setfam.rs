//! Set-family data model: a universe of `n` ground elements and a list of
//! distinct, equal-cardinality member sets in canonical lexicographic
//! order. Every iteration order downstream derives from this order, which
//! is what makes the whole pipeline deterministic.

use std::fmt;
use std::str::FromStr;

use crate::bitset::BitRow;
use crate::error::{Error, Result};

/// Universe sizes are capped so bit rows stay fixed-width and small.
pub const MAX_UNIVERSE: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Universe {
    n: u32,
}

impl Universe {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("universe must have at least one element"));
        }
        if n > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge { n: n as u64, cap: MAX_UNIVERSE });
        }
        Ok(Universe { n })
    }

    pub fn size(&self) -> u32 {
        self.n
    }
}

/// A member set: strictly ascending element ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MSet {
    elems: Vec<u32>,
}

impl MSet {
    /// `elems` must be strictly ascending.
    pub fn new(elems: Vec<u32>) -> Result<Self> {
        if !elems.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::domain("set elements must be strictly ascending"));
        }
        Ok(MSet { elems })
    }

    pub fn from_unsorted(mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("duplicate element in set"));
        }
        Ok(MSet { elems })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elems.binary_search(&e).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct SetFamily {
    universe: Universe,
    m: usize,
    members: Vec<MSet>,
    rows: Vec<BitRow>,
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.m == other.m && self.members == other.members
    }
}
impl Eq for SetFamily {}

impl SetFamily {
    /// Canonicalizes member order, validates distinctness, uniform
    /// cardinality `m`, and element range.
    pub fn new(universe: Universe, m: usize, mut members: Vec<MSet>) -> Result<Self> {
        for s in &members {
            if s.len() != m {
                return Err(Error::domain(format!(
                    "member {:?} has cardinality {}, expected {m}",
                    s.elements(),
                    s.len()
                )));
            }
            if let Some(&e) = s.elements().last() {
                if e >= universe.size() {
                    return Err(Error::domain(format!(
                        "element {e} outside universe of size {}",
                        universe.size()
                    )));
                }
            }
        }
        members.sort();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("duplicate member"));
        }
        let rows = members
            .iter()
            .map(|s| BitRow::from_elements(universe.size(), s.elements()))
            .collect();
        Ok(SetFamily { universe, m, members, rows })
    }

    pub fn from_sets(n: u32, sets: Vec<Vec<u32>>) -> Result<Self> {
        let universe = Universe::new(n)?;
        let m = sets.first().map_or(0, |s| s.len());
        let members = sets.into_iter().map(MSet::from_unsorted).collect::<Result<Vec<_>>>()?;
        SetFamily::new(universe, m, members)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn set_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, idx: usize) -> &MSet {
        &self.members[idx]
    }

    pub fn row(&self, idx: usize) -> &BitRow {
        &self.rows[idx]
    }

    pub fn members(&self) -> impl Iterator<Item = &MSet> {
        self.members.iter()
    }

    /// Index of a member with exactly these elements, if present.
    pub fn find(&self, elems: &[u32]) -> Option<usize> {
        self.members.binary_search_by(|s| s.elements().cmp(elems)).ok()
    }

    fn probe_row(&self, s: &[u32]) -> Option<BitRow> {
        if s.iter().any(|&e| e >= self.universe.size()) {
            return None;
        }
        Some(BitRow::from_elements(self.universe.size(), s))
    }

    /// Indices of members containing every element of `s` (ascending).
    /// Ids outside the universe match nothing.
    pub fn restrict_indices(&self, s: &[u32]) -> Vec<usize> {
        match self.probe_row(s) {
            Some(row) => (0..self.len()).filter(|&i| row.is_subset_of(&self.rows[i])).collect(),
            None => Vec::new(),
        }
    }

    pub fn restrict_count(&self, s: &[u32]) -> u64 {
        match self.probe_row(s) {
            Some(row) => self.rows.iter().filter(|r| row.is_subset_of(r)).count() as u64,
            None => 0,
        }
    }

    /// The subfamily of members containing `s`. The empty `s` returns a
    /// copy of the family; member order is preserved.
    pub fn restrict(&self, s: &[u32]) -> SetFamily {
        let idx = self.restrict_indices(s);
        SetFamily {
            universe: self.universe,
            m: self.m,
            members: idx.iter().map(|&i| self.members[i].clone()).collect(),
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// The link at `s`: members containing `s` with `s` deleted, plus the
    /// map from link-member index to index in `self`.
    pub fn link(&self, s: &[u32]) -> Result<(SetFamily, Vec<usize>)> {
        let idx = self.restrict_indices(s);
        let mut pairs: Vec<(MSet, usize)> = idx
            .into_iter()
            .map(|i| {
                let remaining: Vec<u32> = self.members[i]
                    .elements()
                    .iter()
                    .copied()
                    .filter(|e| !s.contains(e))
                    .collect();
                (MSet { elems: remaining }, i)
            })
            .collect();
        pairs.sort();
        let map: Vec<usize> = pairs.iter().map(|(_, i)| *i).collect();
        let members: Vec<MSet> = pairs.into_iter().map(|(m, _)| m).collect();
        let m = self.m - s.len();
        let rows = members
            .iter()
            .map(|ms| BitRow::from_elements(self.universe.size(), ms.elements()))
            .collect();
        let fam = SetFamily { universe: self.universe, m, members, rows };
        Ok((fam, map))
    }

    /// Counts of ordered pairs `(T, U)` by intersection size `j`, indexed
    /// `0..=m`. The diagonal contributes to slot `m`.
    pub fn intersection_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.m + 1];
        for i in 0..self.len() {
            for jdx in 0..self.len() {
                let j = self.rows[i].intersection_size(&self.rows[jdx]) as usize;
                hist[j] += 1;
            }
        }
        hist
    }

    /// Streaming visit of all ordered pairs with their intersection sizes.
    pub fn for_each_pair(&self, mut f: impl FnMut(usize, usize, u32)) {
        for t in 0..self.len() {
            for u in 0..self.len() {
                f(t, u, self.rows[t].intersection_size(&self.rows[u]));
            }
        }
    }
}

/// Line-oriented family file format. Header `n=<int> m=<int>`, then one
/// member per line as space-separated ascending element ids. `#` starts a
/// comment. The rendered form (canonical member order, single spaces,
/// trailing newline) is the round-trip normal form.
impl FromStr for SetFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut sets: Vec<MSet> = Vec::new();
        let mut seen_line_of: Vec<usize> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            match header {
                None => {
                    header = Some(parse_header(line, line_no)?);
                }
                Some((n, m)) => {
                    let mut elems = Vec::with_capacity(m);
                    for tok in line.split_whitespace() {
                        let e: u32 = tok.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("invalid element id '{tok}'"),
                        })?;
                        if e >= n {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("element id {e} >= n={n}"),
                            });
                        }
                        elems.push(e);
                    }
                    if elems.len() != m {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("member has {} elements, expected m={m}", elems.len()),
                        });
                    }
                    if !elems.windows(2).all(|w| w[0] < w[1]) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "element ids must be strictly ascending".into(),
                        });
                    }
                    let set = MSet { elems };
                    if sets.contains(&set) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("duplicate member {:?}", set.elements()),
                        });
                    }
                    sets.push(set);
                    seen_line_of.push(line_no);
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 1, msg: "missing 'n=<int> m=<int>' header".into() })?;
        let universe = Universe::new(n)?;
        SetFamily::new(universe, m, sets)
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, usize)> {
    let bad = |msg: &str| Error::Parse { line: line_no, msg: msg.into() };
    let mut n: Option<u32> = None;
    let mut m: Option<usize> = None;
    for tok in line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = Some(v.parse().map_err(|_| bad("invalid n"))?);
        } else if let Some(v) = tok.strip_prefix("m=") {
            m = Some(v.parse().map_err(|_| bad("invalid m"))?);
        } else {
            return Err(bad(&format!("unexpected token '{tok}' in header")));
        }
    }
    match (n, m) {
        (Some(n), Some(m)) => Ok((n, m)),
        _ => Err(bad("header must be 'n=<int> m=<int>'")),
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} m={}", self.universe.size(), self.m)?;
        for s in &self.members {
            let mut first = true;
            for e in s.elements() {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parse family-file text (alias for the `FromStr` impl).
pub fn load_family(text: &str) -> Result<SetFamily> {
    text.parse()
}

/// Render the canonical family-file text (alias for `Display`).
pub fn save_family(f: &SetFamily) -> String {
    f.to_string()
}
