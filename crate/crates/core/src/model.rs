use std::collections::BTreeMap;

use crate::error::SpaceError;
use crate::pointset::PointSet;
use crate::space::QuasiDiscreteSpace;

/// A space together with a valuation of atomic propositions.
#[derive(Clone, Debug)]
pub struct ClosureModel {
    space: QuasiDiscreteSpace,
    valuation: BTreeMap<String, PointSet>,
}

impl ClosureModel {
    pub fn new(space: QuasiDiscreteSpace) -> Self {
        ClosureModel {
            space,
            valuation: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) the points where `name` holds.
    pub fn set_proposition(
        &mut self,
        name: impl Into<String>,
        points: PointSet,
    ) -> Result<(), SpaceError> {
        self.space.check_set(&points)?;
        self.valuation.insert(name.into(), points);
        Ok(())
    }

    pub fn with_proposition(
        mut self,
        name: impl Into<String>,
        points: PointSet,
    ) -> Result<Self, SpaceError> {
        self.set_proposition(name, points)?;
        Ok(self)
    }

    /// Convenience for tests and builders: a proposition from point indices.
    pub fn with_points(
        self,
        name: impl Into<String>,
        points: impl IntoIterator<Item = usize>,
    ) -> Result<Self, SpaceError> {
        let point_count = self.point_count();
        let set = PointSet::from_points(point_count, points)
            .map_err(|point| SpaceError::PointOutOfRange { point, point_count })?;
        self.with_proposition(name, set)
    }

    pub fn space(&self) -> &QuasiDiscreteSpace {
        &self.space
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    /// Points where `name` holds; unknown propositions hold nowhere.
    pub fn atom(&self, name: &str) -> PointSet {
        self.valuation
            .get(name)
            .cloned()
            .unwrap_or_else(|| PointSet::empty(self.point_count()))
    }

    pub fn proposition(&self, name: &str) -> Option<&PointSet> {
        self.valuation.get(name)
    }

    /// Proposition names in ascending order.
    pub fn propositions(&self) -> impl Iterator<Item = (&str, &PointSet)> {
        self.valuation.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.point_count())
    }

    pub fn no_points(&self) -> PointSet {
        PointSet::empty(self.point_count())
    }

    /// Same valuation over a different space with the same number of points.
    pub fn replace_space(mut self, space: QuasiDiscreteSpace) -> Result<Self, SpaceError> {
        if space.point_count() != self.point_count() {
            return Err(SpaceError::InvalidSet {
                universe: self.point_count(),
                point_count: space.point_count(),
            });
        }
        self.space = space;
        Ok(self)
    }
}
