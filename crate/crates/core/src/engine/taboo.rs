use crate::SearchSpace;

/// Launch positions of past exploration jumps.
#[derive(Debug, Clone)]
pub struct TabooList<P> {
    entries: Vec<P>,
    tolerance: f64,
}

impl<P: Clone> TabooList<P> {
    pub fn new(tolerance: f64) -> Self {
        TabooList {
            entries: Vec::new(),
            tolerance,
        }
    }

    pub fn for_space<S: SearchSpace<Position = P>>(space: &S) -> Self {
        Self::new(space.taboo_tolerance())
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[P] {
        &self.entries
    }

    pub fn contains<S: SearchSpace<Position = P>>(&self, space: &S, x: &P) -> bool {
        self.entries
            .iter()
            .any(|e| space.positions_equal(e, x, self.tolerance))
    }

    /// Inserts `x` unless an equal entry is already present. Returns whether
    /// the list grew.
    pub fn insert<S: SearchSpace<Position = P>>(&mut self, space: &S, x: P) -> bool {
        if self.contains(space, &x) {
            return false;
        }
        self.entries.push(x);
        true
    }
}
