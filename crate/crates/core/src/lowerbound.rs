//! A family of 1-gap drawings whose treewidth is exponential in the radius.
//!
//! The base graph lives on the lattice square `[0, n^(k+1)]²`. For each
//! level `l` up to `k` it carries the horizontal and vertical edges of the
//! sublattice with step `n^l`, so level 0 alone is the full unit grid and
//! the treewidth is at least `n^(k+1) + 1`. Higher levels act as express
//! lanes: every vertex reaches the coarse level-`k` grid quickly, which
//! caps the radius at `(2k+1)n + ceil(k/2) + 1`.
//!
//! Levels have to cross. A level-`l` vertical edge at `x = X` runs through
//! the unit strip right of its line and meets exactly the lower-level
//! horizontal edges anchored at `(X, y)` with `y` strictly inside its span;
//! the symmetric rule covers horizontal over vertical. Each crossing is
//! charged to the lower-level edge, which therefore absorbs at most one
//! charge per higher level, at most `k` in total. Splitting every edge
//! with `c > 1` charges into a path with one segment per charge brings the
//! load down to one, so the subdivided graph is 1-gap planar while keeping
//! the base graph as a minor.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::graph::radius;
use crate::planar::{
    crossing_orders, gap_charging, verify_gap_charging, Crossing, EmbeddedGraph, GapCharging,
};
use crate::{input_err, Error, Graph, Result};

/// The multilevel drawing plus its 1-gap subdivision. `charging` sends
/// every crossing of `embedded` to its lower-level edge with load at most
/// `k`; `subdivided_charging` does the same per segment with load one.
/// `paths` lists, for each subdivided edge, its replacement path with the
/// original endpoints first and last.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GridHierarchy {
    pub n: u64,
    pub k: u64,
    pub embedded: EmbeddedGraph,
    pub charging: GapCharging,
    pub subdivided: EmbeddedGraph,
    #[serde(rename = "subdividedCharging")]
    pub subdivided_charging: GapCharging,
    pub paths: Vec<Vec<String>>,
}

const DEFAULT_VERTEX_BUDGET: usize = 250_000;

fn vname(x: u64, y: u64) -> String {
    format!("{x},{y}")
}

fn sorted_pair(u: &str, v: &str) -> (String, String) {
    if u <= v {
        (u.to_string(), v.to_string())
    } else {
        (v.to_string(), u.to_string())
    }
}

/// Builds the level hierarchy on `[0, n^(k+1)]²` with its crossings,
/// charges and 1-gap subdivision. The optional budget caps the base
/// vertex count.
pub fn build_grid_hierarchy(n: u64, k: u64, budget: Option<usize>) -> Result<GridHierarchy> {
    if n < 2 {
        return input_err("need n >= 2; n = 1 collapses every level onto the unit grid");
    }
    if k < 1 {
        return input_err("need k >= 1; k = 0 is the plain grid with no crossings");
    }
    let mut npow = vec![1u64];
    for _ in 0..=k {
        let next = npow
            .last()
            .unwrap()
            .checked_mul(n)
            .ok_or_else(|| Error::Resource("n^(k+1) exceeds machine integers".into()))?;
        npow.push(next);
    }
    let big = npow[(k + 1) as usize];
    let vert_count = (big + 1)
        .checked_mul(big + 1)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or_else(|| Error::Resource("vertex count exceeds machine integers".into()))?;
    let cap = budget.unwrap_or(DEFAULT_VERTEX_BUDGET);
    if vert_count > cap {
        return Err(Error::Resource(format!(
            "hierarchy needs {vert_count} base vertices, above the budget {cap}"
        )));
    }

    let mut vertices = Vec::with_capacity(vert_count);
    for x in 0..=big {
        for y in 0..=big {
            vertices.push(vname(x, y));
        }
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for l in 0..=k {
        let step = npow[l as usize];
        let mut y = 0;
        while y <= big {
            let mut x = 0;
            while x + step <= big {
                edges.push((vname(x, y), vname(x + step, y)));
                x += step;
            }
            y += step;
        }
        let mut x = 0;
        while x <= big {
            let mut y = 0;
            while y + step <= big {
                edges.push((vname(x, y), vname(x, y + step)));
                y += step;
            }
            x += step;
        }
    }

    // Crossings, higher level first in each rule. The position along the
    // lower edge is the higher level (its charged crossings all sit in the
    // first unit of the edge, ordered by level); the position along the
    // higher edge is the anchor offset refined by the lower level.
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut charge_to: Vec<(String, String)> = Vec::new();
    for l in 1..=k {
        let step_l = npow[l as usize];
        let mut xx = 0;
        while xx <= big {
            let mut yb = 0;
            while yb + step_l <= big {
                let b_edge = (vname(xx, yb), vname(xx, yb + step_l));
                for j in 0..l {
                    let step_j = npow[j as usize];
                    if xx + step_j > big {
                        continue;
                    }
                    let mut yh = yb + step_j;
                    while yh < yb + step_l {
                        let a_edge = (vname(xx, yh), vname(xx + step_j, yh));
                        crossings.push(Crossing {
                            a: a_edge.clone(),
                            b: b_edge.clone(),
                            pos_a: l as i64,
                            pos_b: ((yh - yb) * (k + 1) + j) as i64,
                            side: None,
                        });
                        charge_to.push(a_edge);
                        yh += step_j;
                    }
                }
                yb += step_l;
            }
            xx += step_l;
        }
        let mut yy = 0;
        while yy <= big {
            let mut xb = 0;
            while xb + step_l <= big {
                let b_edge = (vname(xb, yy), vname(xb + step_l, yy));
                for j in 0..l {
                    let step_j = npow[j as usize];
                    if yy + step_j > big {
                        continue;
                    }
                    let mut xv = xb + step_j;
                    while xv < xb + step_l {
                        let a_edge = (vname(xv, yy), vname(xv, yy + step_j));
                        crossings.push(Crossing {
                            a: a_edge.clone(),
                            b: b_edge.clone(),
                            pos_a: l as i64,
                            pos_b: ((xv - xb) * (k + 1) + j) as i64,
                            side: None,
                        });
                        charge_to.push(a_edge);
                        xv += step_j;
                    }
                }
                xb += step_l;
            }
            yy += step_l;
        }
    }

    let base = Graph::new(vertices, edges.clone())?;
    let embedded = EmbeddedGraph { base, crossings: crossings.clone(), simple: true };
    crossing_orders(&embedded)
        .map_err(|e| Error::Construction(format!("hierarchy drawing: {e}")))?;
    let charging = GapCharging {
        assignment: charge_to.iter().cloned().enumerate().collect(),
        k,
    };
    verify_gap_charging(&embedded, &charging)
        .map_err(|e| Error::Construction(format!("level charging: {e}")))?;

    // Split each edge with c > 1 charges into c segments, cutting right
    // after each charged crossing but the last.
    let mut charged: BTreeMap<&(String, String), Vec<i64>> = BTreeMap::new();
    for (i, target) in charge_to.iter().enumerate() {
        charged.entry(target).or_default().push(crossings[i].pos_a);
    }
    let mut path_of: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    let mut cuts_of: BTreeMap<(String, String), Vec<i64>> = BTreeMap::new();
    for (edge, mut positions) in charged {
        positions.sort();
        let c = positions.len();
        if c < 2 {
            continue;
        }
        let (u, v) = edge;
        let mut path = vec![u.clone()];
        for i in 1..c {
            path.push(format!("{u}~{v}#{i}"));
        }
        path.push(v.clone());
        positions.truncate(c - 1);
        path_of.insert(edge.clone(), path);
        cuts_of.insert(edge.clone(), positions);
    }
    let seg_edge = |edge: &(String, String), pos: i64| -> (String, String) {
        match path_of.get(edge) {
            None => edge.clone(),
            Some(path) => {
                let s = cuts_of[edge].iter().filter(|q| **q < pos).count();
                (path[s].clone(), path[s + 1].clone())
            }
        }
    };
    let mut sub_vertices: Vec<String> =
        embedded.base.vertices().to_vec();
    let mut sub_edges: Vec<(String, String)> = Vec::new();
    for e in &edges {
        match path_of.get(e) {
            None => sub_edges.push(e.clone()),
            Some(path) => {
                for w in path.windows(2) {
                    sub_edges.push((w[0].clone(), w[1].clone()));
                }
                sub_vertices.extend(path[1..path.len() - 1].iter().cloned());
            }
        }
    }
    let sub_crossings: Vec<Crossing> = crossings
        .iter()
        .map(|c| Crossing {
            a: seg_edge(&c.a, c.pos_a),
            b: seg_edge(&c.b, c.pos_b),
            pos_a: c.pos_a,
            pos_b: c.pos_b,
            side: None,
        })
        .collect();
    let sub_assignment: BTreeMap<usize, (String, String)> = charge_to
        .iter()
        .enumerate()
        .map(|(i, target)| (i, seg_edge(target, crossings[i].pos_a)))
        .collect();
    let subdivided = EmbeddedGraph {
        base: Graph::new(sub_vertices, sub_edges)?,
        crossings: sub_crossings,
        simple: true,
    };
    crossing_orders(&subdivided)
        .map_err(|e| Error::Construction(format!("subdivided drawing: {e}")))?;
    let subdivided_charging = GapCharging { assignment: sub_assignment, k: 1 };
    verify_gap_charging(&subdivided, &subdivided_charging)
        .map_err(|e| Error::Construction(format!("segment charging: {e}")))?;

    Ok(GridHierarchy {
        n,
        k,
        embedded,
        charging,
        subdivided,
        subdivided_charging,
        paths: path_of.into_values().collect(),
    })
}

/// The measured facts about a hierarchy next to the limits it claims.
/// `radius_measured` is `None` when the subdivided graph is empty or
/// disconnected; `passed` is the conjunction of every boolean clause.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct HierarchyReport {
    pub grid_contained: bool,
    pub radius_measured: Option<u64>,
    pub radius_limit: u64,
    pub radius_bound: bool,
    pub gap_feasible: bool,
    pub charging_valid: bool,
    pub subdivision_valid: bool,
    pub tw_lower: u64,
    pub passed: bool,
}

fn contains_unit_grid(g: &Graph, big: u64) -> bool {
    if g.vertex_count() as u64 != (big + 1) * (big + 1) {
        return false;
    }
    for x in 0..=big {
        for y in 0..=big {
            if !g.has_vertex(&vname(x, y)) {
                return false;
            }
            if x < big && !g.has_edge(&vname(x, y), &vname(x + 1, y)) {
                return false;
            }
            if y < big && !g.has_edge(&vname(x, y), &vname(x, y + 1)) {
                return false;
            }
        }
    }
    true
}

fn subdivision_consistent(h: &GridHierarchy) -> bool {
    let mut edge_set: BTreeSet<(String, String)> = h
        .embedded
        .base
        .edges()
        .into_iter()
        .map(|(u, v)| sorted_pair(&u, &v))
        .collect();
    let mut verts: BTreeSet<String> =
        h.embedded.base.vertices().iter().cloned().collect();
    for path in &h.paths {
        if path.len() < 3 {
            return false;
        }
        let (u, v) = (&path[0], &path[path.len() - 1]);
        if !edge_set.remove(&sorted_pair(u, v)) {
            return false;
        }
        for w in &path[1..path.len() - 1] {
            if !verts.insert(w.clone()) {
                return false;
            }
        }
        for w in path.windows(2) {
            if !edge_set.insert(sorted_pair(&w[0], &w[1])) {
                return false;
            }
        }
    }
    let sub_edges: BTreeSet<(String, String)> = h
        .subdivided
        .base
        .edges()
        .into_iter()
        .map(|(u, v)| sorted_pair(&u, &v))
        .collect();
    let sub_verts: BTreeSet<String> =
        h.subdivided.base.vertices().iter().cloned().collect();
    edge_set == sub_edges && verts == sub_verts
}

/// Measures a hierarchy: unit-grid containment, radius of the subdivided
/// graph against the `(2k+1)n + ceil(k/2) + 1` limit, 1-gap feasibility
/// decided afresh by the flow solver, validity of the recorded chargings,
/// and consistency of the subdivision paths. Falsified clauses land in
/// the report, not in the error channel.
pub fn check_hierarchy(h: &GridHierarchy) -> Result<HierarchyReport> {
    if h.n < 2 || h.k < 1 {
        return input_err("hierarchy parameters need n >= 2 and k >= 1");
    }
    let mut big = 1u64;
    for _ in 0..=h.k {
        big = big
            .checked_mul(h.n)
            .ok_or_else(|| Error::Resource("n^(k+1) exceeds machine integers".into()))?;
    }
    let grid_contained = contains_unit_grid(&h.embedded.base, big);
    let radius_limit = (2 * h.k + 1) * h.n + h.k.div_ceil(2) + 1;
    let radius_measured = radius(&h.subdivided.base);
    let radius_bound = matches!(radius_measured, Some(r) if r <= radius_limit);
    let gap_feasible = gap_charging(&h.subdivided, 1)?.is_some();
    let charging_valid = h.charging.k == h.k
        && verify_gap_charging(&h.embedded, &h.charging).is_ok()
        && h.subdivided_charging.k == 1
        && verify_gap_charging(&h.subdivided, &h.subdivided_charging).is_ok();
    let subdivision_valid = subdivision_consistent(h);
    let passed =
        grid_contained && radius_bound && gap_feasible && charging_valid && subdivision_valid;
    Ok(HierarchyReport {
        grid_contained,
        radius_measured,
        radius_limit,
        radius_bound,
        gap_feasible,
        charging_valid,
        subdivision_valid,
        tw_lower: big + 1,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_levels_on_the_five_grid() {
        let h = build_grid_hierarchy(2, 1, None).unwrap();
        assert_eq!(h.embedded.base.vertex_count(), 25);
        assert!(h.embedded.base.has_edge("0,0", "2,0"));
        assert!(h.embedded.base.has_edge("0,0", "0,2"));
        assert!(!h.embedded.base.has_edge("1,0", "3,0"));
        // Four interior coarse lines per orientation, one crossing each.
        assert_eq!(h.embedded.crossings.len(), 8);
        // A single higher level never charges an edge twice.
        assert!(h.paths.is_empty());
        assert_eq!(h.subdivided, h.embedded);
        let report = check_hierarchy(&h).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.radius_limit, 8);
        assert_eq!(report.tw_lower, 5);
        assert!(report.radius_measured.unwrap() <= 8);
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(matches!(build_grid_hierarchy(1, 2, None), Err(Error::Input(_))));
        assert!(matches!(build_grid_hierarchy(3, 0, None), Err(Error::Input(_))));
        assert!(matches!(build_grid_hierarchy(2, 9, None), Err(Error::Resource(_))));
        assert!(matches!(build_grid_hierarchy(2, 1, Some(10)), Err(Error::Resource(_))));
    }

    #[test]
    fn three_levels_subdivide_the_doubly_charged_edges() {
        let h = build_grid_hierarchy(2, 2, None).unwrap();
        assert_eq!(h.embedded.base.vertex_count(), 81);
        // Unit edges anchored on a multiple of four with an odd cross
        // coordinate are charged by both higher levels: four heights at
        // x in {0, 4}, per orientation.
        assert_eq!(h.paths.len(), 16);
        assert!(h.paths.iter().all(|p| p.len() == 3));
        assert_eq!(h.subdivided.base.vertex_count(), 81 + 16);
        assert!(h.subdivided.base.has_vertex("0,1~1,1#1"));
        assert!(h.subdivided.base.has_edge("0,1", "0,1~1,1#1"));
        assert!(!h.subdivided.base.has_edge("0,1", "1,1"));
        let report = check_hierarchy(&h).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.radius_limit, 12);
        assert_eq!(report.tw_lower, 9);
    }

    #[test]
    fn figure_sized_instance_checks_out() {
        let h = build_grid_hierarchy(3, 2, None).unwrap();
        assert_eq!(h.embedded.base.vertex_count(), 28 * 28);
        assert!(h.embedded.base.has_edge("0,0", "1,0"));
        assert!(h.embedded.base.has_edge("0,0", "3,0"));
        assert!(h.embedded.base.has_edge("0,0", "9,0"));
        assert_eq!(h.embedded.crossings.len(), 504);
        let report = check_hierarchy(&h).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.radius_limit, 17);
        assert_eq!(report.tw_lower, 28);
    }

    #[test]
    fn tampering_falsifies_the_matching_clause() {
        let mut h = build_grid_hierarchy(2, 1, None).unwrap();
        // The unit edge at the origin carries no charges, so dropping it
        // leaves every other clause intact.
        let kept: Vec<(String, String)> = h
            .embedded
            .base
            .edges()
            .into_iter()
            .filter(|(u, v)| !(u == "0,0" && v == "1,0" || u == "1,0" && v == "0,0"))
            .collect();
        h.embedded.base = Graph::new(h.embedded.base.vertices().to_vec(), kept).unwrap();
        let report = check_hierarchy(&h).unwrap();
        assert!(!report.grid_contained);
        assert!(!report.passed);

        let mut h = build_grid_hierarchy(2, 1, None).unwrap();
        h.charging.assignment.remove(&0);
        let report = check_hierarchy(&h).unwrap();
        assert!(!report.charging_valid);
        assert!(report.gap_feasible, "solver route stays independent");
        assert!(!report.passed);

        let mut h = build_grid_hierarchy(2, 2, None).unwrap();
        h.paths.pop();
        let report = check_hierarchy(&h).unwrap();
        assert!(!report.subdivision_valid);
        assert!(!report.passed);
    }

    #[test]
    fn report_serialises_in_camel_case() {
        let h = build_grid_hierarchy(2, 1, None).unwrap();
        let report = check_hierarchy(&h).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        for field in ["\"gridContained\":", "\"radiusMeasured\":", "\"twLower\":5"] {
            assert!(text.contains(field), "missing {field} in {text}");
        }
        let back: HierarchyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
