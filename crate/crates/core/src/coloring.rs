use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::AtomStructure;
use crate::error::ColoringError;
use crate::group::FiniteGroup;

/// Assignment of non-identity group elements to atom classes. Partition and
/// inverse-closure are checked by the verifier, not assumed here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    group: Arc<FiniteGroup>,
    classes: BTreeMap<String, BTreeSet<usize>>,
}

impl Coloring {
    pub fn new<I, S, E>(group: Arc<FiniteGroup>, classes: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (S, E)>,
        S: Into<String>,
        E: IntoIterator<Item = usize>,
    {
        let mut map: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        for (atom, elements) in classes {
            let atom = atom.into();
            let set = map.entry(atom.clone()).or_default();
            for x in elements {
                if x >= group.order() {
                    return Err(ColoringError::OutOfRange {
                        atom,
                        element: x,
                        order: group.order(),
                    });
                }
                set.insert(x);
            }
        }
        Ok(Coloring { group, classes: map })
    }

    /// Builds a coloring from a per-element atom index (`None` for the
    /// identity), naming classes after the structure's atoms.
    pub(crate) fn from_labels(
        group: Arc<FiniteGroup>,
        s: &AtomStructure,
        labels: &[Option<usize>],
    ) -> Self {
        let mut classes: BTreeMap<String, BTreeSet<usize>> = s
            .atoms()
            .iter()
            .map(|a| (a.name().to_owned(), BTreeSet::new()))
            .collect();
        for (x, l) in labels.iter().enumerate() {
            if let Some(k) = l {
                classes.get_mut(s.atoms()[*k].name()).unwrap().insert(x);
            }
        }
        Coloring { group, classes }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.classes
    }

    pub fn class(&self, atom: &str) -> Option<&BTreeSet<usize>> {
        self.classes.get(atom)
    }

    pub fn atom_names(&self) -> Vec<String> {
        self.classes.keys().cloned().collect()
    }

    /// Class membership per element in the structure's atom order: the first
    /// class containing the element, if any.
    pub fn labels(&self, s: &AtomStructure) -> Vec<Option<usize>> {
        let mut labels = vec![None; self.group.order()];
        for (k, atom) in s.atoms().iter().enumerate() {
            if let Some(set) = self.classes.get(atom.name()) {
                for &x in set {
                    labels[x].get_or_insert(k);
                }
            }
        }
        labels
    }

    /// Same coloring with class names mapped through `rename`.
    pub fn rename_classes(&self, rename: impl Fn(&str) -> String) -> Self {
        Coloring {
            group: self.group.clone(),
            classes: self
                .classes
                .iter()
                .map(|(k, v)| (rename(k), v.clone()))
                .collect(),
        }
    }

    /// Image under an element map applied to every class.
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> Self {
        Coloring {
            group: self.group.clone(),
            classes: self
                .classes
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|&x| f(x)).collect()))
                .collect(),
        }
    }

    /// Moves `element` from whatever class holds it into `atom`.
    pub fn with_moved(&self, element: usize, atom: &str) -> Self {
        let mut out = self.clone();
        for set in out.classes.values_mut() {
            set.remove(&element);
        }
        out.classes.entry(atom.to_owned()).or_default().insert(element);
        out
    }
}
