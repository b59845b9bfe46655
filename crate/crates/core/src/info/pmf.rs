use std::collections::BTreeMap;

use super::{InfoError, Weight};

/// A named coordinate of a joint distribution with its finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis {
    pub name: String,
    pub alphabet: Vec<String>,
}

impl Axis {
    pub fn new(name: impl Into<String>, alphabet: &[&str]) -> Self {
        Axis { name: name.into(), alphabet: alphabet.iter().map(|s| s.to_string()).collect() }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Axis::new(name, &["0", "1"])
    }
}

/// A probability mass function over a labeled finite product space.
///
/// Outcomes are tuples of symbol indices, one per axis. Zero-mass outcomes
/// are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf<W> {
    axes: Vec<Axis>,
    weights: BTreeMap<Vec<usize>, W>,
}

impl<W: Weight> JointPmf<W> {
    pub fn new(axes: Vec<Axis>, entries: impl IntoIterator<Item = (Vec<usize>, W)>) -> Result<Self, InfoError> {
        let pmf = Self::unnormalized(axes, entries)?;
        let total = pmf.weights.values().fold(W::zero(), |s, w| s + w.clone());
        if !total.same(&W::one()) {
            return Err(InfoError::NotNormalized(total.show()));
        }
        Ok(pmf)
    }

    fn unnormalized(axes: Vec<Axis>, entries: impl IntoIterator<Item = (Vec<usize>, W)>) -> Result<Self, InfoError> {
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.name == a.name) {
                return Err(InfoError::DuplicateAxis(a.name.clone()));
            }
        }
        let mut weights: BTreeMap<Vec<usize>, W> = BTreeMap::new();
        for (outcome, w) in entries {
            if outcome.len() != axes.len() || outcome.iter().zip(&axes).any(|(&o, a)| o >= a.alphabet.len()) {
                return Err(InfoError::BadOutcome(outcome));
            }
            if w.is_negative() {
                return Err(InfoError::NegativeWeight(outcome));
            }
            if w.is_zero() {
                continue;
            }
            let slot = weights.entry(outcome).or_insert_with(W::zero);
            *slot = slot.clone() + w;
        }
        Ok(JointPmf { axes, weights })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis_index(&self, name: &str) -> Result<usize, InfoError> {
        self.axes.iter().position(|a| a.name == name).ok_or_else(|| InfoError::UnknownAxis(name.to_string()))
    }

    /// Resolves a list of axis names to indices.
    pub fn axis_indices(&self, names: &[&str]) -> Result<Vec<usize>, InfoError> {
        names.iter().map(|n| self.axis_index(n)).collect()
    }

    /// Outcomes with non-zero mass.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &W)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, outcome: &[usize]) -> W {
        self.weights.get(outcome).cloned().unwrap_or_else(W::zero)
    }

    fn check_axes(&self, axes: &[usize]) -> Result<(), InfoError> {
        match axes.iter().find(|&&a| a >= self.axes.len()) {
            Some(&a) => Err(InfoError::AxisOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// Marginal on `axes`, in the given order. Repeated axes are allowed.
    pub fn marginal(&self, axes: &[usize]) -> Result<JointPmf<W>, InfoError> {
        self.check_axes(axes)?;
        let mut new_axes: Vec<Axis> = Vec::with_capacity(axes.len());
        for &a in axes {
            let mut axis = self.axes[a].clone();
            while new_axes.iter().any(|b| b.name == axis.name) {
                axis.name.push('\'');
            }
            new_axes.push(axis);
        }
        let mut weights: BTreeMap<Vec<usize>, W> = BTreeMap::new();
        for (o, w) in &self.weights {
            let key: Vec<usize> = axes.iter().map(|&a| o[a]).collect();
            let slot = weights.entry(key).or_insert_with(W::zero);
            *slot = slot.clone() + w.clone();
        }
        Ok(JointPmf { axes: new_axes, weights })
    }

    /// Masses of the marginal on `axes`, keyed by projected outcome.
    pub fn marginal_masses(&self, axes: &[usize]) -> BTreeMap<Vec<usize>, W> {
        let mut out: BTreeMap<Vec<usize>, W> = BTreeMap::new();
        for (o, w) in &self.weights {
            let key: Vec<usize> = axes.iter().map(|&a| o[a]).collect();
            let slot = out.entry(key).or_insert_with(W::zero);
            *slot = slot.clone() + w.clone();
        }
        out
    }

    /// Independent product over the concatenated axes. Clashing names on
    /// the right are primed.
    pub fn product(&self, other: &JointPmf<W>) -> JointPmf<W> {
        let mut axes = self.axes.clone();
        for a in &other.axes {
            let mut a = a.clone();
            while axes.iter().any(|b| b.name == a.name) {
                a.name.push('\'');
            }
            axes.push(a);
        }
        let mut weights = BTreeMap::new();
        for (o1, w1) in &self.weights {
            for (o2, w2) in &other.weights {
                let mut o = o1.clone();
                o.extend_from_slice(o2);
                weights.insert(o, w1.clone() * w2.clone());
            }
        }
        JointPmf { axes, weights }
    }

    /// Merges groups of axes into composite axes whose symbols are the
    /// joined component symbols (with `.` between components).
    pub fn regroup(&self, groups: &[(&str, Vec<usize>)]) -> Result<JointPmf<W>, InfoError> {
        let mut axes = Vec::with_capacity(groups.len());
        let mut radices: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
        for (name, members) in groups {
            self.check_axes(members)?;
            let mut alphabet = vec![String::new()];
            for (k, &m) in members.iter().enumerate() {
                let sep = if k == 0 { "" } else { "." };
                alphabet = alphabet
                    .iter()
                    .flat_map(|prefix| self.axes[m].alphabet.iter().map(move |s| format!("{prefix}{sep}{s}")))
                    .collect();
            }
            axes.push(Axis { name: name.to_string(), alphabet });
            radices.push(members.iter().map(|&m| self.axes[m].alphabet.len()).collect());
        }
        let entries = self.weights.iter().map(|(o, w)| {
            let key = groups
                .iter()
                .zip(&radices)
                .map(|((_, members), radix)| members.iter().zip(radix).fold(0, |acc, (&m, &r)| acc * r + o[m]))
                .collect();
            (key, w.clone())
        });
        Self::unnormalized(axes, entries)
    }

    pub fn map_weights<V: Weight>(&self, f: impl Fn(&W) -> V) -> JointPmf<V> {
        JointPmf {
            axes: self.axes.clone(),
            weights: self.weights.iter().map(|(o, w)| (o.clone(), f(w))).filter(|(_, w)| !w.is_zero()).collect(),
        }
    }

    pub fn to_float(&self) -> JointPmf<f64> {
        self.map_weights(|w| w.to_f64())
    }

    pub fn format_outcome(&self, outcome: &[usize]) -> String {
        outcome.iter().zip(&self.axes).map(|(&o, a)| a.alphabet[o].as_str()).collect::<Vec<_>>().join(" ")
    }
}
