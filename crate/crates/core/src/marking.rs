use std::collections::BTreeSet;

/// A finite set of marked features of some host structure.
///
/// Markings are only built through the validating constructors of the
/// marked-structure types, so every item refers to a real feature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking<T: Ord> {
    items: BTreeSet<T>,
}

impl<T: Ord> Marking<T> {
    pub fn empty() -> Self {
        Marking {
            items: BTreeSet::new(),
        }
    }

    pub(crate) fn from_set(items: BTreeSet<T>) -> Self {
        Marking { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: &T) -> bool {
        self.items.contains(item)
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.items.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<T> {
        &self.items
    }
}

impl<T: Ord> Default for Marking<T> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<'a, T: Ord> IntoIterator for &'a Marking<T> {
    type Item = &'a T;
    type IntoIter = std::collections::btree_set::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Every subset of `items`, in binary-counter order. Used by the exhaustive
/// round-trip scans; `items.len()` must stay small.
pub fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    assert!(items.len() < 32, "too many features to enumerate subsets");
    (0u32..(1u32 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}
