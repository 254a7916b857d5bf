use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{display_scalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    R,
    L,
    C,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::R, Kind::L, Kind::C];

    pub fn is_reactive(self) -> bool {
        self != Kind::R
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kind::R => "R",
            Kind::L => "L",
            Kind::C => "C",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "R" | "r" => Ok(Kind::R),
            "L" | "l" => Ok(Kind::L),
            "C" | "c" => Ok(Kind::C),
            _ => Err(Error::Parse(format!("unknown element kind {s:?}"))),
        }
    }
}

/// Series-parallel two-terminal network. Composite nodes built through
/// [`SpNet::series`] and [`SpNet::parallel`] are flattened and their
/// children sorted, so structurally equal networks compare equal.
#[derive(Clone, Debug, PartialEq)]
pub enum SpNet<T> {
    Element { kind: Kind, value: T },
    Series(Vec<SpNet<T>>),
    Parallel(Vec<SpNet<T>>),
}

/// Unvalued network shape with element kinds, used by enumeration and fitting.
pub type Template = SpNet<()>;

fn rank<T>(n: &SpNet<T>) -> u8 {
    match n {
        SpNet::Element { .. } => 0,
        SpNet::Series(_) => 1,
        SpNet::Parallel(_) => 2,
    }
}

pub(crate) fn canonical_cmp<T: PartialOrd>(a: &SpNet<T>, b: &SpNet<T>) -> Ordering {
    match (a, b) {
        (SpNet::Element { kind: ka, value: va }, SpNet::Element { kind: kb, value: vb }) => {
            ka.cmp(kb).then(va.partial_cmp(vb).unwrap_or(Ordering::Equal))
        }
        (SpNet::Series(x), SpNet::Series(y)) | (SpNet::Parallel(x), SpNet::Parallel(y)) => {
            for (p, q) in x.iter().zip(y) {
                let c = canonical_cmp(p, q);
                if c != Ordering::Equal {
                    return c;
                }
            }
            x.len().cmp(&y.len())
        }
        _ => rank(a).cmp(&rank(b)),
    }
}

impl<T> SpNet<T> {
    pub fn element(kind: Kind, value: T) -> Self {
        SpNet::Element { kind, value }
    }

    pub fn children(&self) -> &[SpNet<T>] {
        match self {
            SpNet::Element { .. } => &[],
            SpNet::Series(c) | SpNet::Parallel(c) => c,
        }
    }

    pub fn element_count(&self) -> usize {
        match self {
            SpNet::Element { .. } => 1,
            SpNet::Series(c) | SpNet::Parallel(c) => c.iter().map(|n| n.element_count()).sum(),
        }
    }

    pub fn count_kind(&self, kind: Kind) -> usize {
        self.leaves().filter(|(k, _)| *k == kind).count()
    }

    pub fn reactive_count(&self) -> usize {
        self.leaves().filter(|(k, _)| k.is_reactive()).count()
    }

    /// Leaves in depth-first order.
    pub fn leaves(&self) -> impl Iterator<Item = (Kind, &T)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.into_iter()
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(Kind, &'a T)>) {
        match self {
            SpNet::Element { kind, value } => out.push((*kind, value)),
            SpNet::Series(c) | SpNet::Parallel(c) => {
                for n in c {
                    n.collect_leaves(out);
                }
            }
        }
    }

    /// Rebuilds the tree with new leaf kinds and values, keeping the shape.
    pub fn map_leaves<U>(&self, f: &mut impl FnMut(Kind, &T) -> (Kind, U)) -> SpNet<U> {
        match self {
            SpNet::Element { kind, value } => {
                let (k, v) = f(*kind, value);
                SpNet::Element { kind: k, value: v }
            }
            SpNet::Series(c) => SpNet::Series(c.iter().map(|n| n.map_leaves(f)).collect()),
            SpNet::Parallel(c) => SpNet::Parallel(c.iter().map(|n| n.map_leaves(f)).collect()),
        }
    }

    /// Same tree with series and parallel exchanged.
    pub(crate) fn swap_composition(self) -> Self {
        match self {
            SpNet::Element { .. } => self,
            SpNet::Series(c) => SpNet::Parallel(c.into_iter().map(|n| n.swap_composition()).collect()),
            SpNet::Parallel(c) => SpNet::Series(c.into_iter().map(|n| n.swap_composition()).collect()),
        }
    }

    /// Kind-only copy of this network.
    pub fn template(&self) -> Template {
        self.map_leaves(&mut |k, _| (k, ()))
    }
}

impl<T: PartialOrd + Clone> SpNet<T> {
    pub fn series(children: Vec<SpNet<T>>) -> Result<Self> {
        Self::composite(children, true)
    }

    pub fn parallel(children: Vec<SpNet<T>>) -> Result<Self> {
        Self::composite(children, false)
    }

    fn composite(children: Vec<SpNet<T>>, series: bool) -> Result<Self> {
        let mut flat = Vec::new();
        for c in children {
            match (c, series) {
                (SpNet::Series(g), true) | (SpNet::Parallel(g), false) => flat.extend(g),
                (c, _) => flat.push(c),
            }
        }
        if flat.len() < 2 {
            return Err(Error::InvalidInput("series/parallel nodes need at least two children".into()));
        }
        flat.sort_by(canonical_cmp);
        Ok(if series { SpNet::Series(flat) } else { SpNet::Parallel(flat) })
    }

    /// Flattens nested same-type composites and sorts children recursively.
    pub fn canonicalize(&self) -> Self {
        match self {
            SpNet::Element { .. } => self.clone(),
            SpNet::Series(c) => {
                Self::series(c.iter().map(|n| n.canonicalize()).collect()).unwrap_or_else(|_| self.clone())
            }
            SpNet::Parallel(c) => {
                Self::parallel(c.iter().map(|n| n.canonicalize()).collect()).unwrap_or_else(|_| self.clone())
            }
        }
    }
}

impl<T: Scalar> SpNet<T> {
    /// Checks that every composite has two or more children and every value
    /// is strictly positive.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpNet::Element { kind, value } => {
                if *value > T::zero() {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(format!(
                        "{} value must be positive, got {}",
                        kind.symbol(),
                        display_scalar(value)
                    )))
                }
            }
            SpNet::Series(c) | SpNet::Parallel(c) => {
                if c.len() < 2 {
                    return Err(Error::InvalidInput("composite with fewer than two children".into()));
                }
                c.iter().try_for_each(|n| n.validate())
            }
        }
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SpNet<U> {
        self.map_leaves(&mut |k, v| (k, f(v)))
    }
}

impl<T: Scalar> fmt::Display for SpNet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpNet::Element { kind, value } => write!(f, "{}({})", kind.symbol(), display_scalar(value)),
            SpNet::Series(c) | SpNet::Parallel(c) => {
                f.write_str(if matches!(self, SpNet::Series(_)) { "Series(" } else { "Parallel(" })?;
                for (i, n) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpNet::Element { kind, .. } => f.write_str(kind.symbol()),
            SpNet::Series(c) | SpNet::Parallel(c) => {
                f.write_str(if matches!(self, SpNet::Series(_)) { "S(" } else { "P(" })?;
                for (i, n) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{n}")?;
                }
                f.write_str(")")
            }
        }
    }
}
