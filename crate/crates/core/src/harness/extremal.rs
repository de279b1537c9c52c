use crate::census::are_isomorphic;
use crate::family::{FamilyError, FamilySpec};
use crate::graph::Graph;

/// Whether `g` is isomorphic to the family member described by `spec`.
pub fn is_extremal_graph(g: &Graph, spec: &FamilySpec) -> Result<bool, FamilyError> {
    if g.n() != spec.n() {
        return Ok(false);
    }
    Ok(are_isomorphic(g, &spec.build()?))
}
