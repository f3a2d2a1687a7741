use crate::error::{Error, Result};

/// A subset of the label set, bit `i` standing for the `i`-th sorted label.
pub type Mask = u32;

pub const MAX_LABELS: usize = 5;

/// The finite set `S`, kept sorted so that label order fixes the bijection
/// `S ≅ (n]` used for signs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeIndex {
    labels: Vec<String>,
}

impl CubeIndex {
    pub fn new<I, L>(labels: I) -> Result<CubeIndex>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if labels.len() > MAX_LABELS {
            return Err(Error::Index(format!(
                "{} labels, at most {MAX_LABELS} supported",
                labels.len()
            )));
        }
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Index("repeated label".into()));
        }
        if let Some(bad) = labels
            .iter()
            .find(|l| l.is_empty() || l.contains([',', '|', '=']))
        {
            return Err(Error::Index(format!(
                "label {bad:?} is empty or contains a reserved character"
            )));
        }
        Ok(CubeIndex { labels })
    }

    /// Labels `"1", …, "n"`.
    pub fn standard(n: usize) -> CubeIndex {
        CubeIndex::new((1..=n).map(|i| i.to_string())).expect("at most five standard labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::Index(format!("unknown label {label:?}")))
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.len()) - 1) as Mask
    }

    /// Every subset, in increasing mask order.
    pub fn masks(&self) -> impl Iterator<Item = Mask> {
        0..=self.full()
    }

    /// Positions in `mask`, increasing.
    pub fn members(&self, mask: Mask) -> Vec<usize> {
        (0..self.len()).filter(|&i| mask & (1 << i) != 0).collect()
    }

    pub fn contains(&self, mask: Mask, label: &str) -> bool {
        self.position(label)
            .map(|i| mask & (1 << i) != 0)
            .unwrap_or(false)
    }

    /// Subsets of size `k` in lexicographic order of their sorted members.
    pub fn subsets_of_size(&self, k: usize) -> Vec<Mask> {
        use itertools::Itertools;
        (0..self.len())
            .combinations(k)
            .map(|c| c.iter().fold(0, |m, &i| m | 1 << i))
            .collect()
    }

    /// Comma-joined sorted labels; `""` is the empty set.
    pub fn key(&self, mask: Mask) -> String {
        self.members(mask)
            .iter()
            .map(|&i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(&self, key: &str) -> Result<Mask> {
        if key.is_empty() {
            return Ok(0);
        }
        let parts: Vec<&str> = key.split(',').collect();
        self.mask_of(&parts)
    }

    pub fn mask_of(&self, labels: &[&str]) -> Result<Mask> {
        let mut m = 0;
        for l in labels {
            let bit = 1 << self.position(l)?;
            if m & bit != 0 {
                return Err(Error::Index(format!("label {l} repeated")));
            }
            m |= bit;
        }
        Ok(m)
    }

    /// The index on the labels of `mask`.
    pub fn sub_index(&self, mask: Mask) -> CubeIndex {
        CubeIndex {
            labels: self
                .members(mask)
                .iter()
                .map(|&i| self.labels[i].clone())
                .collect(),
        }
    }

    /// Sends a subset `a` of a sub-index back to the ambient index, given the
    /// ambient positions `members` of the sub-index labels.
    pub fn spread(members: &[usize], a: Mask) -> Mask {
        members
            .iter()
            .enumerate()
            .filter(|(j, _)| a & (1 << j) != 0)
            .fold(0, |m, (_, &i)| m | 1 << i)
    }

    /// Inverse of [`CubeIndex::spread`] on subsets of `members`.
    pub fn gather(members: &[usize], t: Mask) -> Mask {
        members
            .iter()
            .enumerate()
            .filter(|(_, &i)| t & (1 << i) != 0)
            .fold(0, |m, (j, _)| m | 1 << j)
    }
}
