use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// One irreducible summand. `D1` stands for the rank-one lattice <-4>.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub family: Family,
    pub index: u32,
}

impl Component {
    pub fn new(family: Family, index: u32) -> Result<Self, LatticeError> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 1,
            Family::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(Component { family, index })
        } else {
            Err(LatticeError::InvalidIndex(format!("{family:?}{index}")))
        }
    }

    pub fn a(n: u32) -> Self {
        Component::new(Family::A, n).expect("A index")
    }

    pub fn d(n: u32) -> Self {
        Component::new(Family::D, n).expect("D index")
    }

    pub fn e(n: u32) -> Self {
        Component::new(Family::E, n).expect("E index")
    }

    pub fn rank(&self) -> u32 {
        self.index
    }

    /// Number of norm -2 vectors. `D1` has none.
    pub fn root_count(&self) -> u64 {
        let n = self.index as u64;
        match (self.family, self.index) {
            (Family::A, _) => n * (n + 1),
            (Family::D, 1) => 0,
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
        }
    }

    /// Coxeter number; `None` for `D1`, which is not a root system.
    pub fn coxeter_number(&self) -> Option<u64> {
        let n = self.index as u64;
        match (self.family, self.index) {
            (Family::A, _) => Some(n + 1),
            (Family::D, 1) => None,
            (Family::D, 2) => Some(2),
            (Family::D, _) => Some(2 * n - 2),
            (Family::E, 6) => Some(12),
            (Family::E, 7) => Some(18),
            (Family::E, _) => Some(30),
        }
    }

    /// Canonical pieces: D2 -> A1+A1, D3 -> A3.
    fn canonical(self) -> Vec<Component> {
        match (self.family, self.index) {
            (Family::D, 2) => vec![Component::a(1), Component::a(1)],
            (Family::D, 3) => vec![Component::a(3)],
            _ => vec![self],
        }
    }

    fn sort_key(&self) -> (std::cmp::Reverse<u32>, Family) {
        (std::cmp::Reverse(self.index), self.family)
    }
}

impl PartialOrd for Component {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Component {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

/// How `A3` and `A1^2` are rendered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LabelStyle {
    /// `A3`, `A1^2`.
    #[default]
    Canonical,
    /// `D3` for each `A3`, `D2` for one pair of `A1`, as in the D7-complement list.
    DNaming,
}

/// Multiset of ADE components (plus `D1 = <-4>`), kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RootLabel {
    components: Vec<Component>,
}

impl RootLabel {
    pub fn empty() -> Self {
        RootLabel::default()
    }

    pub fn new(components: impl IntoIterator<Item = Component>) -> Self {
        let mut v: Vec<Component> = components.into_iter().flat_map(Component::canonical).collect();
        v.sort();
        RootLabel { components: v }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(Component::rank).sum()
    }

    pub fn root_count(&self) -> u64 {
        self.components.iter().map(Component::root_count).sum()
    }

    pub fn direct_sum(&self, other: &RootLabel) -> RootLabel {
        RootLabel::new(self.components.iter().chain(&other.components).copied())
    }

    /// Remove one copy of `c`; `None` if absent.
    pub fn remove_one(&self, c: Component) -> Option<RootLabel> {
        let pos = self.components.iter().position(|x| *x == c)?;
        let mut v = self.components.clone();
        v.remove(pos);
        Some(RootLabel { components: v })
    }

    /// Distinct components with multiplicities, in display order.
    pub fn grouped(&self) -> Vec<(Component, usize)> {
        let mut out: Vec<(Component, usize)> = Vec::new();
        for c in &self.components {
            match out.last_mut() {
                Some((last, k)) if last == c => *k += 1,
                _ => out.push((*c, 1)),
            }
        }
        out
    }

    pub fn render(&self, style: LabelStyle) -> String {
        let mut parts: Vec<(String, u32, usize)> = Vec::new();
        let mut push = |name: String, index: u32, k: usize| {
            if k > 0 {
                parts.push((name, index, k));
            }
        };
        for (c, k) in self.grouped() {
            match (style, c.family, c.index) {
                (LabelStyle::DNaming, Family::A, 3) => push("D3".into(), 3, k),
                (LabelStyle::DNaming, Family::A, 1) => {
                    push("D2".into(), 2, k / 2);
                    push("A1".into(), 1, k % 2);
                }
                _ => push(c.to_string(), c.index, k),
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        parts
            .iter()
            .map(|(n, _, k)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn multiplicities(&self) -> BTreeMap<Component, usize> {
        self.grouped().into_iter().collect()
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LabelStyle::Canonical))
    }
}

impl FromStr for RootLabel {
    type Err = LatticeError;

    /// Accepts `D9+E8`, `E8^2+D1`, `(E8)^2+D1`, `A15+D2`, `0` or the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(RootLabel::empty());
        }
        let mut comps = Vec::new();
        for raw in s.split(['+', '⊕']) {
            let tok: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || LatticeError::Parse(format!("bad label component {raw:?}"));
            let (body, mult) = match tok.split_once('^') {
                Some((b, m)) => (b, m.parse::<usize>().map_err(|_| bad())?),
                None => (tok.as_str(), 1),
            };
            let body = body.trim_start_matches('(').trim_end_matches(')');
            let mut chars = body.chars();
            let family = match chars.next() {
                Some('A') => Family::A,
                Some('D') => Family::D,
                Some('E') => Family::E,
                _ => return Err(bad()),
            };
            let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
            let c = Component::new(family, index)?;
            comps.extend(std::iter::repeat_n(c, mult));
        }
        Ok(RootLabel::new(comps))
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
