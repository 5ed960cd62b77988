//! Closed-form bound catalogue for the graph classes the library models.
//!
//! Each class comes with the numbers its product-structure decomposition
//! guarantees: the clique factor of the host product, the treewidth of the
//! quotient, row treewidth, layered treewidth, and the queue, nonrepetitive,
//! centred and generalized colouring numbers that follow. All values are
//! exact integers; big-number arithmetic keeps the exponential formulas
//! (queue number grows like `2^tw`) honest, and tables report values as
//! decimal strings.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::{input_err, Result};

/// The binomial coefficient `C(n, k)`, exactly. Out-of-range `k` gives zero.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut out = BigUint::from(1u32);
    for i in 1..=k {
        out = out * (n - k + i) / i;
    }
    out
}

/// `base^exp` as an exact integer.
pub fn power(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits u32"))
}

/// Catalogue parameters are capped so every intermediate two-factor product
/// fits machine integers and the exponential rows stay computable.
const MAX_PARAM: u64 = 1_000_000;

/// Computed treewidths above this make the `2^tw`-shaped rows too large to
/// materialise; those rows are omitted rather than approximated.
const EXP_ROW_LIMIT: u64 = 200_000;

/// Request for one class of the catalogue: the class name plus whatever
/// numeric parameters that class takes.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassSpec {
    pub class: String,
    #[serde(default)]
    pub params: BTreeMap<String, u64>,
}

impl ClassSpec {
    pub fn new<I, S>(class: &str, params: I) -> ClassSpec
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        ClassSpec {
            class: class.to_string(),
            params: params.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Evaluated catalogue entry: named rows with exact decimal values.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundTable {
    pub class: String,
    pub params: BTreeMap<String, u64>,
    pub rows: BTreeMap<String, String>,
}

impl BoundTable {
    pub fn row(&self, name: &str) -> Option<&str> {
        self.rows.get(name).map(String::as_str)
    }
}

/// Parameter accessor shared by all classes; tracks which names a class
/// accepts so strays can be reported.
struct Params<'a> {
    class: &'a str,
    values: &'a BTreeMap<String, u64>,
    allowed: Vec<&'static str>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a ClassSpec) -> Params<'a> {
        Params { class: &spec.class, values: &spec.params, allowed: Vec::new() }
    }

    fn check(&self, name: &str, v: u64) -> Result<u64> {
        if v > MAX_PARAM {
            return input_err(format!(
                "parameter {name:?} = {v} exceeds the catalogue limit {MAX_PARAM}"
            ));
        }
        Ok(v)
    }

    fn required(&mut self, name: &'static str) -> Result<u64> {
        self.allowed.push(name);
        match self.values.get(name) {
            Some(&v) => self.check(name, v),
            None => input_err(format!(
                "class {:?} requires parameter {name:?}",
                self.class
            )),
        }
    }

    fn optional(&mut self, name: &'static str) -> Result<Option<u64>> {
        self.allowed.push(name);
        match self.values.get(name) {
            Some(&v) => Ok(Some(self.check(name, v)?)),
            None => Ok(None),
        }
    }

    fn finish(&self) -> Result<()> {
        for key in self.values.keys() {
            if !self.allowed.iter().any(|a| a == key) {
                return input_err(format!(
                    "class {:?} does not take parameter {key:?} (accepted: {})",
                    self.class,
                    self.allowed.join(", ")
                ));
            }
        }
        Ok(())
    }
}

/// Strong and weak colouring numbers of an `r`-shallow minor of `G ⊠ K_ell`
/// where `G` has Euler genus `g`, as functions of the reach `s`. The depth
/// enters through its double so half-integral depths (topological models
/// built from odd paths) stay in integer arithmetic.
fn genus_colouring(g: u64, depth2x: u64, ell: u64, s: u64) -> (BigUint, BigUint) {
    let shifted = depth2x * (s + 1) + s;
    let scol = BigUint::from(ell) * ((4 * g + 5) * shifted + 2 * g + 1);
    let wcol = (binomial((depth2x + 1) * s + depth2x + 2, 2) + 2 * g)
        * ((2 * depth2x + 2) * s + 2 * depth2x + 1)
        * ell;
    (scol, wcol)
}

/// Queue number of `G ⊠ K_ell` in terms of `q = qn(G)`.
fn queue_clique(ell: u64, q: u64) -> u64 {
    (2 * ell - 1) * q + ell - 1
}

/// Queue number of an `r`-shallow minor of a graph with queue number `q`.
fn queue_shallow(r: u64, q: u64) -> BigUint {
    BigUint::from(2 * r) * power(2 * q, 2 * r)
}

/// Queue number of a subgraph of `H ⊠ P ⊠ K_ell` with `tw(H) ≤ tw`.
fn queue_product(ell: &BigUint, tw: u64) -> BigUint {
    BigUint::from(3u32) * ell * power(2, tw) + BigUint::from(3u32) * ell / 2u32
}

const PLANAR_QUEUE_NUMBER: u64 = 42;
const PLANAR_LAYERED_TREEWIDTH: u64 = 3;

/// Rows shared by every class that lands in `H ⊠ P ⊠ K_clique` with
/// `tw(H) ≤ t`: row treewidth plus the queue, nonrepetitive and centred
/// colouring numbers of the product.
fn product_rows(
    rows: &mut BTreeMap<String, String>,
    host_tw: &BigUint,
    clique: &BigUint,
    p: Option<u64>,
) {
    rows.insert("hostTreewidth".into(), host_tw.to_string());
    rows.insert("hostClique".into(), clique.to_string());
    let bags = host_tw + 1u32;
    rows.insert("rtw".into(), (&bags * clique - 1u32).to_string());
    let tw = u64::try_from(host_tw).expect("capped parameters keep treewidth within u64");
    if tw <= EXP_ROW_LIMIT {
        rows.insert("queueNumberProduct".into(), queue_product(clique, tw).to_string());
        rows.insert("nonrepetitive".into(), (clique * power(4, tw + 1)).to_string());
    }
    if let Some(p) = p {
        rows.insert(
            "centredCol".into(),
            (clique * (p + 1) * binomial(p + tw, tw)).to_string(),
        );
    }
}

fn ltw_rows(rows: &mut BTreeMap<String, String>, ltw: &BigUint) {
    rows.insert("ltw".into(), ltw.to_string());
    rows.insert("boxicity".into(), (BigUint::from(6u32) * ltw + 3u32).to_string());
}

fn col_rows(rows: &mut BTreeMap<String, String>, g: u64, depth2x: u64, ell: u64, s: Option<u64>) {
    if let Some(s) = s {
        let (scol, wcol) = genus_colouring(g, depth2x, ell, s);
        rows.insert("strongCol".into(), scol.to_string());
        rows.insert("weakCol".into(), wcol.to_string());
    }
}

/// Evaluates the catalogue for one class. Unknown classes, missing
/// parameters and stray parameters are input errors; every returned row is
/// an exact integer.
pub fn bound_catalog(spec: &ClassSpec) -> Result<BoundTable> {
    let mut p = Params::new(spec);
    let mut rows: BTreeMap<String, String> = BTreeMap::new();
    match spec.class.as_str() {
        // The quotient machine itself: depth r, quotient treewidth t,
        // partition width ell, k = max degree of the r-th power of the
        // layer graph.
        "engine" => {
            let r = p.required("r")?;
            let t = p.required("t")?;
            let ell = p.required("ell")?;
            let k = p.required("k")?;
            let bags = binomial(2 * r + 1 + t, t);
            rows.insert("bagBound".into(), bags.to_string());
            rows.insert("quotientTreewidth".into(), (&bags - 1u32).to_string());
            rows.insert("partitionWidth".into(), (BigUint::from(ell) * (k + 1)).to_string());
            let clique = BigUint::from(ell) * (2 * r + 1) * (2 * r + 1);
            rows.insert("rtw".into(), (&bags * &clique - 1u32).to_string());
            rows.insert("productClique".into(), clique.to_string());
        }
        // Depth-1 minor of (planar) ∘ K̄_3, so r=1, t=3, ell = 3·3.
        "fan-planar" => {
            let s = p.optional("s")?;
            let cp = p.optional("p")?;
            product_rows(&mut rows, &BigUint::from(19u32), &BigUint::from(81u32), cp);
            ltw_rows(&mut rows, &BigUint::from(45u32));
            col_rows(&mut rows, 0, 2, 3, s);
            let host_q = queue_clique(3, PLANAR_QUEUE_NUMBER);
            rows.insert("queueNumber".into(), queue_shallow(1, host_q).to_string());
        }
        // Each edge crossed at most k times on a genus-g surface; the
        // planarisation is a (k/2)-shallow topological minor of H ∘ K̄_2.
        "k-planar" => {
            let k = p.required("k")?;
            let g = p.optional("g")?.unwrap_or(0);
            let s = p.optional("s")?;
            let tw = binomial(k + 4, 3) - 1u32;
            let clique = BigUint::from(2u32) * (2 * g).max(3) * (k + 1) * (k + 1);
            product_rows(&mut rows, &tw, &clique, None);
            col_rows(&mut rows, g, k, 2, s);
        }
        // Intersection graphs of curves, each in at most delta crossings;
        // the planarised curves give a floor(delta/2)-shallow minor.
        "string" => {
            let delta = p.required("delta")?;
            if delta < 2 {
                return input_err("string graphs need delta >= 2");
            }
            let g = p.optional("g")?.unwrap_or(0);
            let s = p.optional("s")?;
            let tw = binomial(2 * (delta / 2) + 4, 3) - 1u32;
            let clique = BigUint::from(2u32) * (2 * g).max(3) * (delta + 1) * (delta + 1);
            product_rows(&mut rows, &tw, &clique, None);
            col_rows(&mut rows, g, 2 * (delta / 2), 2, s);
        }
        // Clusters of at most k vertices drawn in disjoint planar regions:
        // a subgraph of (planar) ⊠ K_k, no shallow minor needed.
        "cluster-planar" => {
            let k = p.required("k")?;
            p.optional("p")?;
            if k == 0 {
                return input_err("cluster size k must be at least 1");
            }
            rows.insert("hostClique".into(), k.to_string());
            rows.insert("rtw".into(), (12 * k - 1).to_string());
            ltw_rows(&mut rows, &BigUint::from(PLANAR_LAYERED_TREEWIDTH * k));
            rows.insert(
                "queueNumber".into(),
                queue_clique(k, PLANAR_QUEUE_NUMBER).to_string(),
            );
        }
        // Edges bundled at their endpoints, each bundle crossed at most k
        // times: a (k+1)-shallow minor of (planar) ∘ K̄_2.
        "fan-bundle" => {
            let k = p.required("k")?;
            let s = p.optional("s")?;
            let cp = p.optional("p")?;
            let tw = binomial(2 * k + 6, 3) - 1u32;
            let clique = BigUint::from(6u32) * (2 * k + 3) * (2 * k + 3);
            product_rows(&mut rows, &tw, &clique, cp);
            ltw_rows(&mut rows, &BigUint::from(24 * k + 30));
            col_rows(&mut rows, 0, 2 * (k + 1), 2, s);
            let host_q = queue_clique(2, PLANAR_QUEUE_NUMBER);
            rows.insert(
                "queueNumber".into(),
                queue_shallow(k + 1, host_q).to_string(),
            );
        }
        // Cliques glued onto the closed neighbourhoods selected by a
        // d-clique lift of a planar graph: a 1-shallow minor of G ∘ K̄_{d+1}.
        "clique-lift" => {
            let d = p.required("d")?;
            let s = p.optional("s")?;
            let cp = p.optional("p")?;
            product_rows(
                &mut rows,
                &BigUint::from(19u32),
                &BigUint::from(27 * (d + 1)),
                cp,
            );
            ltw_rows(&mut rows, &BigUint::from(45 * (d + 1)));
            col_rows(&mut rows, 0, 2, 3 * (d + 1), s);
        }
        // The k-th power of a planar graph with d = max degree of the
        // floor(k/2)-th power: a floor(k/2)-shallow minor of G ∘ K̄_{d+1}.
        "planar-power" => {
            let k = p.required("k")?;
            let d = p.required("d")?;
            let s = p.optional("s")?;
            let cp = p.optional("p")?;
            let half = k / 2;
            let tw = binomial(2 * half + 4, 3) - 1u32;
            let clique = BigUint::from(3u32) * (2 * half + 1) * (2 * half + 1) * (d + 1);
            product_rows(&mut rows, &tw, &clique, cp);
            ltw_rows(
                &mut rows,
                &(BigUint::from(PLANAR_LAYERED_TREEWIDTH) * (d + 1) * (4 * half + 1)),
            );
            col_rows(&mut rows, 0, 2 * half, d + 1, s);
        }
        // Transfer formulas, exposed directly so pipelines can quote them.
        "queue-product" => {
            let ell = p.required("ell")?;
            let tw = p.required("tw")?;
            rows.insert(
                "queueNumber".into(),
                queue_product(&BigUint::from(ell), tw).to_string(),
            );
        }
        "nonrepetitive-product" => {
            let ell = p.required("ell")?;
            let tw = p.required("tw")?;
            rows.insert(
                "nonrepetitive".into(),
                (BigUint::from(ell) * power(4, tw + 1)).to_string(),
            );
        }
        "centred-product" => {
            let ell = p.required("ell")?;
            let t = p.required("t")?;
            let pp = p.required("p")?;
            rows.insert(
                "centredCol".into(),
                (BigUint::from(ell) * (pp + 1) * binomial(pp + t, t)).to_string(),
            );
        }
        "colouring-genus" => {
            let g = p.required("g")?;
            let r = p.required("r")?;
            let s = p.required("s")?;
            let ell = p.required("ell")?;
            let (scol, wcol) = genus_colouring(g, 2 * r, ell, s);
            rows.insert("strongCol".into(), scol.to_string());
            rows.insert("weakCol".into(), wcol.to_string());
        }
        "layered-treewidth-shallow" => {
            let ell = p.required("ell")?;
            let r = p.required("r")?;
            let ltw = p.required("ltw")?;
            rows.insert(
                "ltw".into(),
                (BigUint::from(ell) * (4 * r + 1) * ltw).to_string(),
            );
        }
        "boxicity-ltw" => {
            let ltw = p.required("ltw")?;
            rows.insert("boxicity".into(), (6 * ltw + 3).to_string());
        }
        "queue-shallow" => {
            let r = p.required("r")?;
            let q = p.required("q")?;
            if r == 0 {
                return input_err("queue transfer needs depth r >= 1");
            }
            rows.insert("queueNumber".into(), queue_shallow(r, q).to_string());
        }
        "queue-clique" => {
            let ell = p.required("ell")?;
            let q = p.required("q")?;
            if ell == 0 {
                return input_err("clique factor ell must be at least 1");
            }
            rows.insert("queueNumber".into(), queue_clique(ell, q).to_string());
        }
        "strict-queue-complete" => {
            let ell = p.required("ell")?;
            if ell == 0 {
                return input_err("complete graph must have at least one vertex");
            }
            rows.insert("strictQueueNumber".into(), (ell - 1).to_string());
        }
        // How many crossings per edge a charging must absorb when shortcut
        // paths of length <= k meet at most d per vertex.
        "shortcut-gap" => {
            let k = p.required("k")?;
            let d = p.required("d")?;
            if k == 0 || d == 0 {
                return input_err("shortcut parameters k and d must be at least 1");
            }
            rows.insert("gap".into(), ((d - 1) * (k - 1) + 2 * d).to_string());
        }
        other => {
            return input_err(format!(
                "unknown class {other:?}; known classes: engine, fan-planar, k-planar, \
                 string, cluster-planar, fan-bundle, clique-lift, planar-power, \
                 queue-product, nonrepetitive-product, centred-product, colouring-genus, \
                 layered-treewidth-shallow, boxicity-ltw, queue-shallow, queue-clique, \
                 strict-queue-complete, shortcut-gap"
            ))
        }
    }
    p.finish()?;
    Ok(BoundTable {
        class: spec.class.clone(),
        params: spec.params.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_fixtures() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(4, 1), BigUint::from(4u32));
        assert_eq!(binomial(5, 3), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(52, 5), BigUint::from(2598960u32));
    }

    #[test]
    fn fan_planar_table() {
        let t = bound_catalog(&ClassSpec::new("fan-planar", [("s", 1u64), ("p", 2)])).unwrap();
        assert_eq!(t.row("rtw"), Some("1619"));
        assert_eq!(t.row("ltw"), Some("45"));
        assert_eq!(t.row("hostTreewidth"), Some("19"));
        assert_eq!(t.row("hostClique"), Some("81"));
        assert_eq!(t.row("boxicity"), Some("273"));
        assert_eq!(t.row("queueNumber"), Some("359552"));
        assert_eq!(t.row("queueNumberProduct"), Some("127402105"));
        // 81 * 4^20.
        assert_eq!(t.row("nonrepetitive"), Some("89060441849856"));
        // 45s + 33 at s=1; C(3s+4, 2) (18s + 15) at s=1 is 21 * 33.
        assert_eq!(t.row("strongCol"), Some("78"));
        assert_eq!(t.row("weakCol"), Some("693"));
        // 81 * 3 * C(21, 19).
        assert_eq!(t.row("centredCol"), Some("51030"));
    }

    #[test]
    fn k_planar_table() {
        let t = bound_catalog(&ClassSpec::new("k-planar", [("k", 1u64)])).unwrap();
        assert_eq!(t.row("rtw"), Some("239"));
        assert_eq!(t.row("hostTreewidth"), Some("9"));
        assert_eq!(t.row("hostClique"), Some("24"));
        // Genus only enters once 2g beats 3.
        let t = bound_catalog(&ClassSpec::new("k-planar", [("k", 1u64), ("g", 2)])).unwrap();
        assert_eq!(t.row("hostClique"), Some("32"));
        assert_eq!(t.row("rtw"), Some("319"));
    }

    #[test]
    fn string_table() {
        let t = bound_catalog(&ClassSpec::new("string", [("delta", 2u64)])).unwrap();
        assert_eq!(t.row("hostClique"), Some("54"));
        assert_eq!(t.row("hostTreewidth"), Some("19"));
        assert_eq!(t.row("rtw"), Some("1079"));
        assert!(bound_catalog(&ClassSpec::new("string", [("delta", 1u64)])).is_err());
    }

    #[test]
    fn fan_bundle_table() {
        let t = bound_catalog(&ClassSpec::new("fan-bundle", [("k", 1u64)])).unwrap();
        assert_eq!(t.row("hostClique"), Some("150"));
        assert_eq!(t.row("hostTreewidth"), Some("55"));
        assert_eq!(t.row("rtw"), Some("8399"));
        assert_eq!(t.row("ltw"), Some("54"));
        // 2(k+1) (2 * 127)^{2(k+1)} at k=1: 4 * 254^4.
        assert_eq!(t.row("queueNumber"), Some("16649257024"));
        // The exponential rows stay exact far beyond machine integers:
        // 486 * 4^220 has 136 decimal digits.
        let t = bound_catalog(&ClassSpec::new("fan-bundle", [("k", 3u64)])).unwrap();
        assert_eq!(
            t.row("nonrepetitive").unwrap(),
            (BigUint::from(486u32) * power(4, 220)).to_string()
        );
        assert_eq!(t.row("nonrepetitive").unwrap().len(), 136);
    }

    #[test]
    fn clique_lift_table_matches_fan_planar_constants() {
        // d=2 instantiates the same r=1, t=3, ell=9 pipeline as fan-planar.
        let t = bound_catalog(&ClassSpec::new("clique-lift", [("d", 2u64)])).unwrap();
        assert_eq!(t.row("rtw"), Some("1619"));
        assert_eq!(t.row("hostTreewidth"), Some("19"));
        assert_eq!(t.row("hostClique"), Some("81"));
        let t = bound_catalog(&ClassSpec::new("clique-lift", [("d", 0u64)])).unwrap();
        assert_eq!(t.row("rtw"), Some("539"));
    }

    #[test]
    fn planar_power_table() {
        let t =
            bound_catalog(&ClassSpec::new("planar-power", [("k", 2u64), ("d", 6)])).unwrap();
        assert_eq!(t.row("hostTreewidth"), Some("19"));
        assert_eq!(t.row("hostClique"), Some("189"));
        assert_eq!(t.row("rtw"), Some("3779"));
        assert_eq!(t.row("ltw"), Some("105"));
        assert_eq!(t.row("boxicity"), Some("633"));
    }

    #[test]
    fn engine_table_matches_quotient_fixture() {
        let spec = ClassSpec::new("engine", [("r", 1u64), ("t", 1), ("ell", 1), ("k", 2)]);
        let t = bound_catalog(&spec).unwrap();
        assert_eq!(t.row("bagBound"), Some("4"));
        assert_eq!(t.row("partitionWidth"), Some("3"));
        assert_eq!(t.row("productClique"), Some("9"));
        assert_eq!(t.row("rtw"), Some("35"));
        // r=1, t=3 is the quotient treewidth used by the planar pipelines.
        let spec = ClassSpec::new("engine", [("r", 1u64), ("t", 3), ("ell", 3), ("k", 2)]);
        let t = bound_catalog(&spec).unwrap();
        assert_eq!(t.row("quotientTreewidth"), Some("19"));
    }

    #[test]
    fn transfer_formula_tables() {
        let t = bound_catalog(&ClassSpec::new("shortcut-gap", [("k", 1u64), ("d", 5)])).unwrap();
        assert_eq!(t.row("gap"), Some("10"));
        let t = bound_catalog(&ClassSpec::new("shortcut-gap", [("k", 2u64), ("d", 3)])).unwrap();
        assert_eq!(t.row("gap"), Some("8"));
        let t = bound_catalog(&ClassSpec::new("strict-queue-complete", [("ell", 4u64)])).unwrap();
        assert_eq!(t.row("strictQueueNumber"), Some("3"));
        let t =
            bound_catalog(&ClassSpec::new("queue-clique", [("ell", 3u64), ("q", 42)])).unwrap();
        assert_eq!(t.row("queueNumber"), Some("212"));
        let t =
            bound_catalog(&ClassSpec::new("queue-shallow", [("r", 1u64), ("q", 212)])).unwrap();
        assert_eq!(t.row("queueNumber"), Some("359552"));
        let t = bound_catalog(&ClassSpec::new(
            "colouring-genus",
            [("g", 0u64), ("r", 1), ("s", 1), ("ell", 3)],
        ))
        .unwrap();
        assert_eq!(t.row("strongCol"), Some("78"));
        assert_eq!(t.row("weakCol"), Some("693"));
        let t = bound_catalog(&ClassSpec::new(
            "layered-treewidth-shallow",
            [("ell", 3u64), ("r", 1), ("ltw", 3)],
        ))
        .unwrap();
        assert_eq!(t.row("ltw"), Some("45"));
        let t = bound_catalog(&ClassSpec::new("boxicity-ltw", [("ltw", 45u64)])).unwrap();
        assert_eq!(t.row("boxicity"), Some("273"));
        let t = bound_catalog(&ClassSpec::new("cluster-planar", [("k", 4u64)])).unwrap();
        assert_eq!(t.row("hostClique"), Some("4"));
        assert_eq!(t.row("rtw"), Some("47"));
        assert_eq!(t.row("queueNumber"), Some("297"));
    }

    #[test]
    fn bad_requests_are_input_errors() {
        use crate::Error;
        assert!(matches!(
            bound_catalog(&ClassSpec::new("no-such-class", [("k", 1u64)])),
            Err(Error::Input(_))
        ));
        let err = bound_catalog(&ClassSpec::new("k-planar", Vec::<(String, u64)>::new()))
            .unwrap_err();
        assert!(err.to_string().contains("requires parameter \"k\""), "{err}");
        let err = bound_catalog(&ClassSpec::new("fan-planar", [("delta", 3u64)])).unwrap_err();
        assert!(err.to_string().contains("does not take parameter"), "{err}");
        let err =
            bound_catalog(&ClassSpec::new("k-planar", [("k", 2_000_000u64)])).unwrap_err();
        assert!(err.to_string().contains("catalogue limit"), "{err}");
    }

    #[test]
    fn tables_round_trip_through_json() {
        let t = bound_catalog(&ClassSpec::new("fan-planar", [("s", 2u64)])).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"rtw\":\"1619\""), "{text}");
        let back: BoundTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}
