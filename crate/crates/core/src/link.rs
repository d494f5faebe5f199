//! Link states: one column of a diagram after cutting every propagating edge.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Slot};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Defect,
    Isolated,
    /// Joined by a cup to the given vertex (0-based).
    Cup(usize),
}

/// A column of `n` vertices, each a defect, isolated, or half of a cup.
///
/// Invariants: cups are non-crossing and no cup encloses a defect.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkState {
    sites: Vec<Site>,
}

impl LinkState {
    pub fn new(sites: Vec<Site>) -> Result<LinkState> {
        let n = sites.len();
        if n == 0 {
            return Err(Error::BadLinkState("empty link state".into()));
        }
        let mut open: Vec<usize> = Vec::new();
        for (i, s) in sites.iter().enumerate() {
            match *s {
                Site::Defect if !open.is_empty() => {
                    return Err(Error::BadLinkState(format!("defect at {} lies under a cup", i + 1)));
                }
                Site::Cup(j) if j >= n || j == i || sites[j] != Site::Cup(i) => {
                    return Err(Error::BadLinkState(format!("cup at {} is not an involution", i + 1)));
                }
                Site::Cup(j) if j > i => open.push(i),
                Site::Cup(j)
                    if open.pop() != Some(j) => {
                        return Err(Error::BadLinkState(format!("cups crossing at {}", i + 1)));
                    }
                _ => {}
            }
        }
        Ok(LinkState { sites })
    }

    pub fn all(n: usize, site: Site) -> LinkState {
        assert!(!matches!(site, Site::Cup(_)));
        LinkState { sites: vec![site; n] }
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Site at a 1-based vertex.
    pub fn site(&self, vertex: usize) -> Site {
        self.sites[vertex - 1]
    }

    /// 1-based defect positions.
    pub fn defects(&self) -> Vec<usize> {
        self.positions(|s| s == Site::Defect)
    }

    pub fn isolated(&self) -> Vec<usize> {
        self.positions(|s| s == Site::Isolated)
    }

    /// Cups as 1-based `(i, k)` with `i < k`.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        self.sites
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Site::Cup(j) if j > i => Some((i + 1, j + 1)),
                _ => None,
            })
            .collect()
    }

    fn positions(&self, f: impl Fn(Site) -> bool) -> Vec<usize> {
        self.sites.iter().enumerate().filter(|(_, s)| f(**s)).map(|(i, _)| i + 1).collect()
    }

    pub fn has_defect(&self) -> bool {
        self.sites.contains(&Site::Defect)
    }

    /// Replace the defects at 1-based `i < k` by a cup.
    pub fn splice(&self, i: usize, k: usize) -> Result<LinkState> {
        let n = self.n();
        if i >= k || i == 0 || k > n {
            return Err(Error::InvalidSplice { i, k, blocking: i.min(k), reason: "vertices out of order or range" });
        }
        for v in [i, k] {
            if self.site(v) != Site::Defect {
                return Err(Error::InvalidSplice { i, k, blocking: v, reason: "not a defect" });
            }
        }
        if let Some(j) = (i + 1..k).find(|&j| self.site(j) == Site::Defect) {
            return Err(Error::InvalidSplice { i, k, blocking: j, reason: "intervening defect" });
        }
        let mut sites = self.sites.clone();
        sites[i - 1] = Site::Cup(k - 1);
        sites[k - 1] = Site::Cup(i - 1);
        LinkState::new(sites)
    }

    /// Every link state reachable by a (possibly empty) sequence of splices.
    pub fn splice_closure(&self) -> BTreeSet<LinkState> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.clone()]);
        seen.insert(self.clone());
        while let Some(p) = queue.pop_front() {
            let defects = p.defects();
            // Only adjacent defects (in the defect order) can be spliced.
            for w in defects.windows(2) {
                let q = p.splice(w[0], w[1]).expect("adjacent defects splice");
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    pub fn to_json(&self) -> LinkStateJson {
        LinkStateJson {
            n: self.n(),
            state: self.to_string(),
            defects: self.defects(),
            isolated: self.isolated(),
            cups: self.cups().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// JSON mirror; `state` is authoritative when reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkStateJson {
    pub n: usize,
    pub state: String,
    pub defects: Vec<usize>,
    pub isolated: Vec<usize>,
    pub cups: Vec<[usize; 2]>,
}

impl Serialize for LinkState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = LinkStateJson::deserialize(d)?;
        let p: LinkState = json.state.parse().map_err(serde::de::Error::custom)?;
        if p.n() != json.n {
            return Err(serde::de::Error::custom("n does not match state length"));
        }
        Ok(p)
    }
}

impl fmt::Display for LinkState {
    /// `D` defect, `O` isolated, balanced parentheses for cups.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sites.iter().enumerate() {
            let c = match *s {
                Site::Defect => 'D',
                Site::Isolated => 'O',
                Site::Cup(j) if j > i => '(',
                Site::Cup(_) => ')',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LinkState {
    type Err = Error;

    fn from_str(s: &str) -> Result<LinkState> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut sites = vec![Site::Isolated; chars.len()];
        let mut open = Vec::new();
        for (i, c) in chars.iter().enumerate() {
            match c {
                'D' => sites[i] = Site::Defect,
                'O' => sites[i] = Site::Isolated,
                '(' => open.push(i),
                ')' => {
                    let j = open.pop().ok_or_else(|| Error::BadLinkState(format!("unbalanced {s:?}")))?;
                    sites[i] = Site::Cup(j);
                    sites[j] = Site::Cup(i);
                }
                other => return Err(Error::BadLinkState(format!("unexpected {other:?} in {s:?}"))),
            }
        }
        if !open.is_empty() {
            return Err(Error::BadLinkState(format!("unbalanced {s:?}")));
        }
        LinkState::new(sites)
    }
}

/// Right link state: right-column cups kept, propagating edges cut to defects.
pub fn right_link_state(d: &Diagram) -> LinkState {
    column_state(d, Slot::R)
}

pub fn left_link_state(d: &Diagram) -> LinkState {
    column_state(d, Slot::L)
}

fn column_state(d: &Diagram, side: fn(usize) -> Slot) -> LinkState {
    let sites = (1..=d.n())
        .map(|j| match d.partner(side(j)) {
            None => Site::Isolated,
            Some(q) if q.is_left() == side(j).is_left() => Site::Cup(q.index() - 1),
            Some(_) => Site::Defect,
        })
        .collect();
    LinkState { sites }
}

/// All valid link states on `n` vertices, sorted.
pub fn enumerate_link_states(n: usize) -> Vec<LinkState> {
    fn go(pos: usize, n: usize, sites: &mut Vec<Site>, open: &mut Vec<usize>, out: &mut Vec<LinkState>) {
        if pos == n {
            if open.is_empty() {
                out.push(LinkState { sites: sites.clone() });
            }
            return;
        }
        if open.len() > n - pos {
            return;
        }
        if open.is_empty() {
            sites[pos] = Site::Defect;
            go(pos + 1, n, sites, open, out);
        }
        sites[pos] = Site::Isolated;
        go(pos + 1, n, sites, open, out);
        open.push(pos);
        sites[pos] = Site::Cup(usize::MAX);
        go(pos + 1, n, sites, open, out);
        open.pop();
        if let Some(top) = open.pop() {
            sites[pos] = Site::Cup(top);
            sites[top] = Site::Cup(pos);
            go(pos + 1, n, sites, open, out);
            sites[top] = Site::Cup(usize::MAX);
            open.push(top);
        }
    }
    assert!(n >= 1);
    let mut out = Vec::new();
    go(0, n, &mut vec![Site::Isolated; n], &mut Vec::new(), &mut out);
    out.sort();
    out
}
