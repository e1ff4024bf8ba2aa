//! Approximation spaces and the lower/upper approximation operators.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::Id;

/// A set of class indices, at most 64 classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassSet(pub u64);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);

    pub fn full(n: usize) -> Self {
        ClassSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        ClassSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: ClassSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ClassSet) -> Self {
        ClassSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ClassSet) -> Self {
        ClassSet(self.0 & other.0)
    }

    pub fn difference(self, other: ClassSet) -> Self {
        ClassSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        ClassSet(!self.0 & ClassSet::full(n).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl std::fmt::Display for ClassSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for ClassSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ClassSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        items.into_iter().try_fold(ClassSet::EMPTY, |acc, i| {
            if i < 64 {
                Ok(acc.union(ClassSet::singleton(i)))
            } else {
                Err(serde::de::Error::custom(format!("class index {i} exceeds 63")))
            }
        })
    }
}

/// A union of classes, given both by the classes and by the members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefinableSet {
    pub members: Vec<String>,
    pub classes: ClassSet,
}

/// `{"universe": [...], "partition": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub universe: Vec<Id>,
    pub partition: Vec<Vec<Id>>,
}

/// A finite universe with a partition into indiscernibility classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    universe: Vec<String>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index: HashMap<String, usize>,
}

/// One realizable `(lower, upper)` pair together with a set producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetweennessWitness {
    pub lower: ClassSet,
    pub upper: ClassSet,
    pub set: Vec<String>,
}

impl ApproximationSpace {
    pub fn new(universe: Vec<String>, partition: Vec<Vec<String>>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, x) in universe.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("object `{x}` is listed twice")));
            }
        }
        if partition.len() > 64 {
            return Err(Error::InvalidSpace(format!(
                "{} classes exceed the limit of 64",
                partition.len()
            )));
        }
        let mut class_of = vec![usize::MAX; universe.len()];
        let mut classes = Vec::with_capacity(partition.len());
        for (k, class) in partition.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidSpace(format!("class {k} is empty")));
            }
            let mut members = Vec::with_capacity(class.len());
            for x in class {
                let i = *index.get(x).ok_or_else(|| Error::UnknownObject(x.clone()))?;
                if class_of[i] != usize::MAX {
                    return Err(Error::InvalidSpace(format!("object `{x}` lies in two classes")));
                }
                class_of[i] = k;
                members.push(i);
            }
            members.sort_unstable();
            classes.push(members);
        }
        if let Some(i) = class_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidSpace(format!(
                "object `{}` lies in no class",
                universe[i]
            )));
        }
        Ok(ApproximationSpace {
            universe,
            classes,
            class_of,
            index,
        })
    }

    /// Objects `1..=n` grouped by the given index blocks (0-based).
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let name = |i: usize| (i + 1).to_string();
        Self::new(
            (0..n).map(name).collect(),
            blocks.iter().map(|b| b.iter().map(|&i| name(i)).collect()).collect(),
        )
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_blocks(n, &(0..n).map(|i| vec![i]).collect::<Vec<_>>()).expect("discrete partition")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_blocks(n, &[(0..n).collect()]).expect("one class")
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self> {
        Self::new(
            json.universe.iter().map(|x| x.0.clone()).collect(),
            json.partition
                .iter()
                .map(|c| c.iter().map(|x| x.0.clone()).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            universe: self.universe.iter().map(|x| Id(x.clone())).collect(),
            partition: self
                .classes
                .iter()
                .map(|c| c.iter().map(|&i| Id(self.universe[i].clone())).collect())
                .collect(),
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, object: usize) -> usize {
        self.class_of[object]
    }

    pub fn is_singleton_class(&self, k: usize) -> bool {
        self.classes[k].len() == 1
    }

    pub fn singleton_classes(&self) -> ClassSet {
        (0..self.classes.len())
            .filter(|&k| self.is_singleton_class(k))
            .fold(ClassSet::EMPTY, |acc, k| acc.union(ClassSet::singleton(k)))
    }

    /// Resolves object ids to indices.
    pub fn resolve<S: AsRef<str>>(&self, ids: &[S]) -> Result<BTreeSet<usize>> {
        ids.iter()
            .map(|id| {
                let id = id.as_ref();
                self.index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::UnknownObject(id.to_string()))
            })
            .collect()
    }

    /// Classes contained in `set`.
    pub fn lower_classes(&self, set: &BTreeSet<usize>) -> ClassSet {
        self.classes_where(|class| class.iter().all(|x| set.contains(x)))
    }

    /// Classes meeting `set`.
    pub fn upper_classes(&self, set: &BTreeSet<usize>) -> ClassSet {
        self.classes_where(|class| class.iter().any(|x| set.contains(x)))
    }

    fn classes_where(&self, pred: impl Fn(&[usize]) -> bool) -> ClassSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| pred(c))
            .fold(ClassSet::EMPTY, |acc, (k, _)| acc.union(ClassSet::singleton(k)))
    }

    /// Objects of the given classes, in universe order.
    pub fn members(&self, classes: ClassSet) -> Vec<usize> {
        let mut out: Vec<usize> = classes.iter().flat_map(|k| self.classes[k].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    pub fn definable(&self, classes: ClassSet) -> DefinableSet {
        DefinableSet {
            members: self
                .members(classes)
                .into_iter()
                .map(|i| self.universe[i].clone())
                .collect(),
            classes,
        }
    }

    pub fn lower<S: AsRef<str>>(&self, a: &[S]) -> Result<DefinableSet> {
        Ok(self.definable(self.lower_classes(&self.resolve(a)?)))
    }

    pub fn upper<S: AsRef<str>>(&self, a: &[S]) -> Result<DefinableSet> {
        Ok(self.definable(self.upper_classes(&self.resolve(a)?)))
    }

    pub fn rough_includes<S: AsRef<str>>(&self, a: &[S], b: &[S]) -> Result<bool> {
        let (a, b) = (self.resolve(a)?, self.resolve(b)?);
        Ok(self.lower_classes(&a).is_subset(self.lower_classes(&b))
            && self.upper_classes(&a).is_subset(self.upper_classes(&b)))
    }

    pub fn rough_equal<S: AsRef<str>>(&self, a: &[S], b: &[S]) -> Result<bool> {
        let (a, b) = (self.resolve(a)?, self.resolve(b)?);
        Ok(self.lower_classes(&a) == self.lower_classes(&b) && self.upper_classes(&a) == self.upper_classes(&b))
    }

    /// One witness `A` for every realizable pair `(D1, D2)` with
    /// `D1 ⊆ b` and `c ⊆ D2`: `A` is `D1` plus the first object of every
    /// class in `D2 \ D1`.
    pub fn betweenness_solve<S: AsRef<str>>(&self, b: &[S], c: &[S]) -> Result<Vec<BetweennessWitness>> {
        let (b, c) = (self.resolve(b)?, self.resolve(c)?);
        let inside_b = self.lower_classes(&b);
        let meets_c = self.upper_classes(&c);
        // Per class: 0 = outside D2, 1 = boundary, 2 = inside D1.
        let options: Vec<Vec<u8>> = (0..self.classes.len())
            .map(|k| {
                [0u8, 1, 2]
                    .into_iter()
                    .filter(|&s| match s {
                        0 => !meets_c.contains(k),
                        1 => !self.is_singleton_class(k),
                        _ => inside_b.contains(k),
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        if options.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut lower = ClassSet::EMPTY;
            let mut upper = ClassSet::EMPTY;
            let mut set = BTreeSet::new();
            for (k, &i) in choice.iter().enumerate() {
                match options[k][i] {
                    0 => {}
                    1 => {
                        upper = upper.union(ClassSet::singleton(k));
                        set.insert(self.classes[k][0]);
                    }
                    _ => {
                        lower = lower.union(ClassSet::singleton(k));
                        upper = upper.union(ClassSet::singleton(k));
                        set.extend(self.classes[k].iter().copied());
                    }
                }
            }
            out.push(BetweennessWitness {
                lower,
                upper,
                set: set.into_iter().map(|i| self.universe[i].clone()).collect(),
            });
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return Ok(out);
                }
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}
