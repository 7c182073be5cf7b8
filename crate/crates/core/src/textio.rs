//! Text formats.
//!
//! Three families live here: the cell-set export (one record per cell,
//! exact `num/den` coordinates, bit-exact round-trip), the system
//! definition file (dimension, ambient box, diagonal maps), and the
//! report renderers (plain text for people, JSON with exact rational
//! strings for machines). Decimal values never appear in machine output.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::attractor::{Address, CellSet, IFSystem};
use crate::error::{Error, Result};
use crate::geom::{Aabb, AffineMap, Point};
use crate::quotient::{HomeoReport, QuotientIteration, SelfSimReport};
use crate::rational::{format_rational, parse_rational, sig6, to_f64, Rational};
use crate::topology::{
    check_conditions, clopen_partition, Gap, LevelConnectivity, PropertyReport,
};

// ---------------------------------------------------------------------------
// cell set export

/// A parsed cell-set export; the generating maps are not part of the format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSetData {
    pub name: String,
    pub dim: usize,
    pub level: usize,
    pub ambient: Aabb,
    pub cells: Vec<(Address, Aabb)>,
}

fn coords_line(b: &Aabb) -> String {
    b.lower()
        .iter()
        .chain(b.upper())
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One record per cell: address, then lower and upper coordinates as
/// exact `num/den` strings.
pub fn write_cells(cells: &CellSet) -> String {
    let ifs = cells.ifs();
    let mut out = String::new();
    let _ = writeln!(out, "cellset v1");
    let _ = writeln!(out, "name {}", ifs.name());
    let _ = writeln!(out, "dim {}", ifs.dim());
    let _ = writeln!(out, "level {}", cells.level());
    let _ = writeln!(out, "ambient {}", coords_line(ifs.ambient()));
    let _ = writeln!(out, "cells {}", cells.len());
    for (address, bx) in cells.cells() {
        let _ = writeln!(out, "cell {address} {}", coords_line(bx));
    }
    out
}

fn parse_box(parts: &[&str], dim: usize, what: &str) -> Result<Aabb> {
    if parts.len() != 2 * dim {
        return Err(Error::invalid(format!(
            "{what} needs {} coordinates, got {}",
            2 * dim,
            parts.len()
        )));
    }
    let coords = parts
        .iter()
        .map(|p| parse_rational(p))
        .collect::<Result<Vec<Rational>>>()?;
    Aabb::new(coords[..dim].to_vec(), coords[dim..].to_vec())
}

pub fn read_cells(text: &str) -> Result<CellSetData> {
    let mut name = None;
    let mut dim = None;
    let mut level = None;
    let mut ambient = None;
    let mut declared = None;
    let mut cells: Vec<(Address, Aabb)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().expect("non-empty line");
        let rest: Vec<&str> = parts.collect();
        let fail = |msg: String| Error::invalid(format!("line {}: {msg}", lineno + 1));
        match key {
            "cellset" => {
                if rest != ["v1"] {
                    return Err(fail(format!("unsupported cellset version {rest:?}")));
                }
            }
            "name" => name = Some(rest.join(" ")),
            "dim" => {
                dim = Some(
                    rest.first()
                        .and_then(|v| v.parse::<usize>().ok())
                        .filter(|&d| d == 1 || d == 2)
                        .ok_or_else(|| fail("dim must be 1 or 2".into()))?,
                )
            }
            "level" => {
                level = Some(
                    rest.first()
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| fail("bad level".into()))?,
                )
            }
            "ambient" => {
                let d = dim.ok_or_else(|| fail("dim must precede ambient".into()))?;
                ambient = Some(parse_box(&rest, d, "ambient")?);
            }
            "cells" => {
                declared = Some(
                    rest.first()
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| fail("bad cell count".into()))?,
                )
            }
            "cell" => {
                let d = dim.ok_or_else(|| fail("dim must precede cells".into()))?;
                let address: Address = rest
                    .first()
                    .ok_or_else(|| fail("cell needs an address".into()))?
                    .parse()?;
                let bx = parse_box(&rest[1..], d, "cell")?;
                cells.push((address, bx));
            }
            other => return Err(fail(format!("unknown key {other:?}"))),
        }
    }

    let dim = dim.ok_or_else(|| Error::invalid("missing dim line"))?;
    let level = level.ok_or_else(|| Error::invalid("missing level line"))?;
    let ambient = ambient.ok_or_else(|| Error::invalid("missing ambient line"))?;
    if let Some(n) = declared {
        if n != cells.len() {
            return Err(Error::invalid(format!(
                "declared {n} cells, found {}",
                cells.len()
            )));
        }
    }
    if cells.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::invalid("cell addresses must be sorted and unique"));
    }
    if cells.iter().any(|(a, _)| a.depth() != level) {
        return Err(Error::invalid("every cell address must have depth = level"));
    }
    Ok(CellSetData {
        name: name.unwrap_or_default(),
        dim,
        level,
        ambient,
        cells,
    })
}

// ---------------------------------------------------------------------------
// system definition file

/// Parses a system definition:
///
/// ```text
/// # any comment
/// name my-system
/// dim 2
/// ambient 0/1 0/1 1/1 1/1
/// map 1/3 1/3 0/1 0/1
/// map 1/3 1/3 2/3 0/1
/// ```
///
/// Every `map` line holds the diagonal entries followed by the offset,
/// all as exact `num/den` values. Non-contractions are rejected with the
/// offending Lipschitz value.
pub fn parse_ifs(text: &str) -> Result<IFSystem> {
    let mut name = "custom".to_string();
    let mut dim = None;
    let mut ambient = None;
    let mut maps: Vec<AffineMap> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().expect("non-empty line");
        let rest: Vec<&str> = parts.collect();
        let fail = |msg: String| Error::invalid(format!("line {}: {msg}", lineno + 1));
        match key {
            "name" => name = rest.join(" "),
            "dim" => {
                dim = Some(
                    rest.first()
                        .and_then(|v| v.parse::<usize>().ok())
                        .filter(|&d| d == 1 || d == 2)
                        .ok_or_else(|| fail("dim must be 1 or 2".into()))?,
                )
            }
            "ambient" => {
                let d = dim.ok_or_else(|| fail("dim must precede ambient".into()))?;
                ambient = Some(parse_box(&rest, d, "ambient")?);
            }
            "map" => {
                let d = dim.ok_or_else(|| fail("dim must precede map lines".into()))?;
                if rest.len() != 2 * d {
                    return Err(fail(format!(
                        "map needs {} values (diagonal then offset), got {}",
                        2 * d,
                        rest.len()
                    )));
                }
                let values = rest
                    .iter()
                    .map(|p| parse_rational(p))
                    .collect::<Result<Vec<Rational>>>()?;
                let map = AffineMap::diagonal(values[..d].to_vec(), values[d..].to_vec())
                    .map_err(|e| fail(format!("map {}: {e}", maps.len() + 1)))?;
                maps.push(map);
            }
            other => return Err(fail(format!("unknown key {other:?}"))),
        }
    }

    let ambient = ambient.ok_or_else(|| Error::invalid("missing ambient line"))?;
    IFSystem::new(name, maps, ambient)
}

// ---------------------------------------------------------------------------
// analysis report

/// Everything the `analyze` command reports for one system and depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub ifs_name: String,
    pub dimension: usize,
    pub map_count: usize,
    pub depth: usize,
    pub lipschitz_sum: Rational,
    pub fixed_points: Vec<Point>,
    pub property: PropertyReport,
    pub clopen: Option<(Vec<Address>, Vec<Address>)>,
    pub nested: Vec<LevelConnectivity>,
}

impl AnalysisReport {
    pub fn compute(ifs: &Arc<IFSystem>, depth: usize, budget: u64) -> Result<AnalysisReport> {
        let conditions = check_conditions(ifs);
        let property = PropertyReport::compute(ifs, depth, budget)?;
        let cells = crate::attractor::iterate_attractor(ifs, depth, budget)?;
        let clopen = if cells.len() >= 2 {
            clopen_partition(&cells)?
        } else {
            None
        };
        let nested = crate::topology::nested_connectivity_report(ifs, depth, budget)?;
        Ok(AnalysisReport {
            ifs_name: ifs.name().to_string(),
            dimension: ifs.dim(),
            map_count: ifs.map_count(),
            depth,
            lipschitz_sum: conditions.lipschitz_sum,
            fixed_points: conditions.fixed_points,
            property,
            clopen,
            nested,
        })
    }
}

fn point_text(p: &[Rational]) -> String {
    let inner = p.iter().map(format_rational).collect::<Vec<_>>().join(",");
    format!("({inner})")
}

fn gap_text(gap: &Option<Gap>) -> String {
    match gap {
        None => "n/a".into(),
        Some(Gap::Touching) => "touching".into(),
        Some(Gap::Separated(d)) => format_rational(&d.squared),
    }
}

fn address_list(addresses: &[Address]) -> String {
    addresses
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Stable, line-oriented rendering; exact values plus 6-digit decimals
/// where a human wants a sense of scale.
pub fn analysis_to_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "analysis report");
    let _ = writeln!(s, "ifs: {}", r.ifs_name);
    let _ = writeln!(s, "dimension: {}", r.dimension);
    let _ = writeln!(s, "maps: {}", r.map_count);
    let _ = writeln!(s, "depth: {}", r.depth);
    let _ = writeln!(s, "cells: {}", r.property.cell_count);
    let _ = writeln!(
        s,
        "lipschitz_sum: {} (~{})",
        format_rational(&r.lipschitz_sum),
        sig6(to_f64(&r.lipschitz_sum))
    );
    let _ = writeln!(s, "condition_i_injective: {}", r.property.condition_i);
    let _ = writeln!(s, "condition_ii_fixed_points_nontrivial: {}", r.property.condition_ii);
    let _ = writeln!(s, "condition_iii_contraction_sum_below_one: {}", r.property.condition_iii);
    let fixed = r
        .fixed_points
        .iter()
        .map(|p| point_text(p))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(s, "fixed_points: {fixed}");
    let _ = writeln!(s, "component_count: {}", r.property.component_count);
    let _ = writeln!(s, "min_gap_squared: {}", gap_text(&r.property.min_gap));
    if let Some(Gap::Separated(d)) = &r.property.min_gap {
        let _ = writeln!(s, "min_gap_approx: {}", sig6(d.approx()));
    }
    match &r.clopen {
        Some((y, rest)) => {
            let _ = writeln!(s, "clopen_partition: found");
            let _ = writeln!(s, "clopen_y: {}", address_list(y));
            let _ = writeln!(s, "clopen_complement: {}", address_list(rest));
        }
        None => {
            let _ = writeln!(s, "clopen_partition: none");
        }
    }
    let _ = writeln!(s, "perfect_proxy: {}", r.property.perfect_proxy);
    let _ = writeln!(
        s,
        "windows: {}",
        r.property
            .window_count
            .map_or("n/a".into(), |w| w.to_string())
    );
    let _ = writeln!(
        s,
        "zero_dim_evidence_at_depth_{}: {}",
        r.depth, r.property.zero_dim_evidence
    );
    let _ = writeln!(s, "nested_connectivity:");
    for level in &r.nested {
        let _ = writeln!(
            s,
            "  level {}: components {} within_single_parent_component {}",
            level.level, level.component_count, level.within_single_parent_component
        );
    }
    s
}

fn rat_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn point_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat_json).collect())
}

fn gap_json(gap: &Option<Gap>) -> Value {
    match gap {
        None => Value::Null,
        Some(Gap::Touching) => json!("touching"),
        Some(Gap::Separated(d)) => rat_json(&d.squared),
    }
}

pub fn analysis_to_json(r: &AnalysisReport) -> String {
    let mut obj = Map::new();
    obj.insert("report".into(), json!("analysis"));
    obj.insert("ifs".into(), json!(r.ifs_name));
    obj.insert("dimension".into(), json!(r.dimension));
    obj.insert("maps".into(), json!(r.map_count));
    obj.insert("depth".into(), json!(r.depth));
    obj.insert("cells".into(), json!(r.property.cell_count));
    obj.insert("lipschitz_sum".into(), rat_json(&r.lipschitz_sum));
    obj.insert(
        "conditions".into(),
        json!({
            "i_injective": r.property.condition_i,
            "ii_fixed_points_nontrivial": r.property.condition_ii,
            "iii_contraction_sum_below_one": r.property.condition_iii,
        }),
    );
    obj.insert(
        "fixed_points".into(),
        Value::Array(r.fixed_points.iter().map(|p| point_json(p)).collect()),
    );
    obj.insert("component_count".into(), json!(r.property.component_count));
    obj.insert("min_gap_squared".into(), gap_json(&r.property.min_gap));
    obj.insert(
        "clopen_partition".into(),
        match &r.clopen {
            None => Value::Null,
            Some((y, rest)) => json!({
                "y": y.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "complement": rest.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            }),
        },
    );
    obj.insert("perfect_proxy".into(), json!(r.property.perfect_proxy));
    obj.insert(
        "windows".into(),
        r.property.window_count.map_or(Value::Null, |w| json!(w)),
    );
    obj.insert("zero_dim_evidence".into(), json!(r.property.zero_dim_evidence));
    obj.insert("zero_dim_evidence_depth".into(), json!(r.depth));
    obj.insert(
        "nested_connectivity".into(),
        Value::Array(
            r.nested
                .iter()
                .map(|l| {
                    json!({
                        "level": l.level,
                        "components": l.component_count,
                        "within_single_parent_component": l.within_single_parent_component,
                    })
                })
                .collect(),
        ),
    );
    let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// quotient reports

fn homeo_text(s: &mut String, h: &HomeoReport) {
    let _ = writeln!(
        s,
        "  homeomorphism: bijective {} isometry {} pairs {}",
        h.bijective, h.isometry, h.pairs_checked
    );
    if let Some(mapping) = &h.mapping {
        for (y, label) in mapping {
            let _ = writeln!(s, "    h: {y} -> class {label}");
        }
    }
    if let Some(table) = &h.metric_table {
        for (a, b, rho) in table {
            let _ = writeln!(s, "    rho({a}, {b}) = {}", format_rational(rho));
        }
    }
}

fn selfsim_text(s: &mut String, r: &SelfSimReport) {
    let _ = writeln!(
        s,
        "  self_similarity: domain_depth {} covering_complete {} covering_exactly_once {}",
        r.domain_depth, r.covering_complete, r.covering_exactly_once
    );
    for m in &r.maps {
        let _ = writeln!(
            s,
            "    map {}: contraction_holds {} ratio_exactly_one_third {} pairs {}",
            m.symbol, m.contraction_holds, m.ratio_exactly_one_third, m.pairs_checked
        );
    }
}

pub fn quotient_to_text(reports: &[QuotientIteration]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "quotient report");
    let _ = writeln!(s, "iterations: {}", reports.len());
    for r in reports {
        let _ = writeln!(s, "iteration {}:", r.index);
        let _ = writeln!(s, "  depth: {}", r.depth);
        let _ = writeln!(s, "  classes: {}", r.class_count);
        let _ = writeln!(s, "  big_class_size: {}", r.big_class_size);
        let _ = writeln!(s, "  nontrivial: {}", r.nontrivial);
        if let Some(witness) = &r.witness {
            let members = witness
                .members
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(s, "  witness_class: {members}");
        }
        homeo_text(&mut s, &r.homeo);
        selfsim_text(&mut s, &r.selfsim);
        let _ = writeln!(
            s,
            "  conjugacy_to_code_space: bijective {} expansion {} exact {}",
            r.conjugacy.bijective,
            format_rational(&r.conjugacy.expansion_factor),
            r.conjugacy.expansion_exact
        );
        let _ = writeln!(s, "  passed: {}", r.passed());
    }
    // a continuous map between compact metric spaces is closed, so the
    // collapse map is closed automatically; recorded, not re-checked
    let _ = writeln!(s, "note: collapse maps between compact metric spaces are closed");
    s
}

pub fn quotient_to_json(reports: &[QuotientIteration]) -> String {
    let iterations: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "depth": r.depth,
                "classes": r.class_count,
                "big_class_size": r.big_class_size,
                "nontrivial": r.nontrivial,
                "witness_class": r.witness.as_ref().map(|c| {
                    c.members.iter().map(|w| w.to_string()).collect::<Vec<_>>()
                }),
                "homeomorphism": {
                    "bijective": r.homeo.bijective,
                    "isometry": r.homeo.isometry,
                    "pairs_checked": r.homeo.pairs_checked,
                },
                "self_similarity": {
                    "domain_depth": r.selfsim.domain_depth,
                    "covering_complete": r.selfsim.covering_complete,
                    "covering_exactly_once": r.selfsim.covering_exactly_once,
                    "maps": r.selfsim.maps.iter().map(|m| json!({
                        "symbol": m.symbol,
                        "contraction_holds": m.contraction_holds,
                        "ratio_exactly_one_third": m.ratio_exactly_one_third,
                        "pairs_checked": m.pairs_checked,
                    })).collect::<Vec<_>>(),
                },
                "conjugacy": {
                    "kind": r.conjugacy.kind,
                    "bijective": r.conjugacy.bijective,
                    "expansion_factor": format_rational(&r.conjugacy.expansion_factor),
                    "expansion_exact": r.conjugacy.expansion_exact,
                },
                "passed": r.passed(),
            })
        })
        .collect();
    let value = json!({
        "report": "quotient",
        "iterations": iterations,
        "note": "collapse maps between compact metric spaces are closed",
    });
    let mut out = serde_json::to_string_pretty(&value).expect("serializable");
    out.push('\n');
    out
}

/// Structured text for a decomposition: depth, kind, classes as sorted
/// word lists.
pub fn decomposition_to_text(d: &crate::quotient::Decomposition) -> String {
    use crate::quotient::DecompositionKind;
    let mut s = String::new();
    let _ = writeln!(s, "decomposition v1");
    let _ = writeln!(s, "depth {}", d.depth());
    match d.kind() {
        DecompositionKind::Trivial => {
            let _ = writeln!(s, "kind trivial");
        }
        DecompositionKind::Collapse { y_prefix, q } => {
            let _ = writeln!(s, "kind collapse");
            let _ = writeln!(s, "y_prefix {y_prefix}");
            let _ = writeln!(s, "q {q}");
        }
    }
    let _ = writeln!(s, "classes {}", d.class_count());
    for c in d.classes() {
        let members = c
            .members
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(s, "class {} : {members}", c.label);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{iterate_attractor, preset, DEFAULT_CELL_BUDGET};
    use crate::quotient::{build_collapse_quotient, iterate_quotients, Word};
    use proptest::prelude::*;

    fn cells(name: &str, k: usize) -> CellSet {
        let ifs = Arc::new(preset(name).unwrap());
        iterate_attractor(&ifs, k, DEFAULT_CELL_BUDGET).unwrap()
    }

    #[test]
    fn cell_export_round_trips_bit_exactly() {
        for (name, k) in [("cmts", 3), ("sierpinski-carpet", 2), ("sierpinski-gasket", 2)] {
            let cs = cells(name, k);
            let text = write_cells(&cs);
            let data = read_cells(&text).unwrap();
            assert_eq!(data.name, name);
            assert_eq!(data.level, k);
            assert_eq!(data.cells, cs.cells().to_vec(), "{name}");
            // and writing what was read reproduces the bytes
            assert_eq!(text, {
                let mut out = String::new();
                use std::fmt::Write;
                let _ = writeln!(out, "cellset v1");
                let _ = writeln!(out, "name {}", data.name);
                let _ = writeln!(out, "dim {}", data.dim);
                let _ = writeln!(out, "level {}", data.level);
                let _ = writeln!(out, "ambient {}", coords_line(&data.ambient));
                let _ = writeln!(out, "cells {}", data.cells.len());
                for (a, b) in &data.cells {
                    let _ = writeln!(out, "cell {a} {}", coords_line(b));
                }
                out
            });
        }
    }

    #[test]
    fn read_cells_rejects_malformed_input() {
        assert!(read_cells("dim 3\n").is_err());
        assert!(read_cells("cell 1 0/1 1/1\n").is_err()); // dim not declared
        let missing = "dim 1\nlevel 1\ncells 2\ncell 1 0/1 1/3\n";
        assert!(read_cells(missing).is_err()); // no ambient, count mismatch
    }

    #[test]
    fn parse_ifs_accepts_the_cantor_family() {
        let text = "# the middle-third system\nname my-cantor\ndim 1\nambient 0/1 1/1\nmap 1/3 0/1\nmap 1/3 2/3\n";
        let ifs = parse_ifs(text).unwrap();
        assert_eq!(ifs.name(), "my-cantor");
        assert_eq!(ifs.map_count(), 2);
        assert_eq!(ifs.lipschitz_sum(), crate::rational::rat(2, 3));
    }

    #[test]
    fn parse_ifs_rejects_non_contractions_with_the_exact_value() {
        let text = "dim 1\nambient 0/1 1/1\nmap 1/3 0/1\nmap 7/6 0/1\n";
        let err = parse_ifs(text).unwrap_err();
        match err {
            Error::InvalidInput(msg) => assert!(msg.contains("7/6"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_ifs_rejects_maps_leaving_the_ambient_box() {
        let text = "dim 1\nambient 0/1 1/1\nmap 1/3 0/1\nmap 1/3 5/6\n";
        assert!(parse_ifs(text).is_err());
    }

    #[test]
    fn analysis_renderings_are_deterministic() {
        let ifs = Arc::new(preset("sierpinski-carpet").unwrap());
        let report = AnalysisReport::compute(&ifs, 2, DEFAULT_CELL_BUDGET).unwrap();
        let a = analysis_to_text(&report);
        let b = analysis_to_text(&report);
        assert_eq!(a, b);
        assert!(a.contains("windows: 9"));
        assert!(a.contains("component_count: 1"));
        assert!(a.contains("min_gap_squared: touching"));
        let j = analysis_to_json(&report);
        assert_eq!(j, analysis_to_json(&report));
        let parsed: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(parsed["windows"], serde_json::json!(9));
        assert_eq!(parsed["lipschitz_sum"], serde_json::json!("8/3"));
    }

    #[test]
    fn quotient_rendering_contains_the_witness() {
        let reports = iterate_quotients(1, 5, &"1".parse::<Word>().unwrap(), None).unwrap();
        let text = quotient_to_text(&reports);
        assert!(text.contains("big_class_size: 17"));
        assert!(text.contains("passed: true"));
        let json = quotient_to_json(&reports);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["iterations"][0]["big_class_size"], serde_json::json!(17));
    }

    #[test]
    fn decomposition_text_lists_sorted_classes() {
        let d = build_collapse_quotient(2, &"1".parse().unwrap(), &"11".parse().unwrap()).unwrap();
        let text = decomposition_to_text(&d);
        assert!(text.contains("kind collapse"));
        assert!(text.contains("class 11 : 11 21 22"));
        assert!(text.contains("class 12 : 12"));
    }

    proptest! {
        // round-trip of arbitrary exact coordinates through the export
        #[test]
        fn export_survives_arbitrary_rationals(n1 in -40i64..40, d1 in 1i64..40, width in 1i64..20) {
            let lo = crate::rational::rat(n1, d1);
            let hi = &lo + crate::rational::rat(width, 7);
            let line = format!(
                "dim 1\nlevel 1\nambient {} {}\ncell 1 {} {}\ncell 2 {} {}\n",
                format_rational(&lo), format_rational(&hi),
                format_rational(&lo), format_rational(&hi),
                format_rational(&lo), format_rational(&hi),
            );
            let data = read_cells(&line).unwrap();
            prop_assert_eq!(data.cells[0].1.lower()[0].clone(), lo);
            prop_assert_eq!(data.cells[0].1.upper()[0].clone(), hi);
        }
    }
}
