//! The symbolic collapse quotient of the middle-third Cantor set.
//!
//! Everything runs on the depth-`k` code space: words over `{1, 2}` stand
//! for the cells of the level-`k` cover, and the clopen set `Y` is a prefix
//! cylinder (the default `1` is the left third). Collapsing the complement
//! of `Y` to a chosen point `q` of `Y` partitions the words into one big
//! class `{q} u (words outside Y)` and singletons, and the map sending
//! `y` to its class is checked to be a bijective isometry for the
//! pushforward metric. Conjugating the symbolic contractions through that
//! relabeling exhibits the quotient as self-similar again, with the exact
//! contraction factor `1/3`, and because the relabeled space is the full
//! code space one level down, the construction restarts and iterates.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, third_pow, Rational};

/// Number of symbols in the code alphabet.
pub const ALPHABET: u8 = 2;

/// A word over `{1, 2}`; depth-`k` words address the level-`k` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self> {
        let symbols = symbols.into();
        if symbols.iter().any(|&s| s == 0 || s > ALPHABET) {
            return Err(Error::invalid("word symbols must be 1 or 2"));
        }
        Ok(Word(symbols))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The word `1^depth`, the leftmost point of its cylinder.
    pub fn ones(depth: usize) -> Self {
        Word(vec![1; depth])
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// All `2^depth` words in lexicographic order.
    pub fn all(depth: usize) -> Vec<Word> {
        let mut words = vec![Word::empty()];
        for _ in 0..depth {
            words = words
                .iter()
                .flat_map(|w| (1..=ALPHABET).map(|s| w.appended(s)))
                .collect();
        }
        words
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn appended(&self, symbol: u8) -> Word {
        let mut w = self.0.clone();
        w.push(symbol);
        Word(w)
    }

    pub fn prepended(&self, symbol: u8) -> Word {
        let mut w = Vec::with_capacity(self.0.len() + 1);
        w.push(symbol);
        w.extend_from_slice(&self.0);
        Word(w)
    }

    pub fn concat(prefix: &Word, rest: &Word) -> Word {
        let mut w = prefix.0.clone();
        w.extend_from_slice(&rest.0);
        Word(w)
    }

    /// Drops the first `count` symbols: the `count`-fold shift.
    pub fn shifted(&self, count: usize) -> Word {
        Word(self.0[count.min(self.0.len())..].to_vec())
    }

    /// Left endpoint of the word's cell: symbol 1 contributes ternary
    /// digit 0, symbol 2 contributes ternary digit 2.
    pub fn value(&self) -> Rational {
        let mut acc = Rational::zero();
        for (i, &s) in self.0.iter().enumerate() {
            if s == 2 {
                acc += rat(2, 1) * third_pow(i + 1);
            }
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(Word::empty());
        }
        let symbols = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::invalid(format!("bad word symbol {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word(symbols))
    }
}

/// One equivalence class: the label is the `Y`-word whose fiber it is, the
/// members are the collapsed words, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub label: Word,
    pub members: Vec<Word>,
}

impl Class {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionKind {
    /// Every class a singleton; homeomorphic to the space itself.
    Trivial,
    /// Everything outside the `y_prefix` cylinder collapsed onto `q`.
    Collapse { y_prefix: Word, q: Word },
}

/// A partition of all depth-`k` words into labeled classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    depth: usize,
    kind: DecompositionKind,
    classes: Vec<Class>,
}

impl Decomposition {
    /// The identity partition: one singleton class per word.
    pub fn trivial(depth: usize) -> Decomposition {
        let classes = Word::all(depth)
            .into_iter()
            .map(|w| Class { label: w.clone(), members: vec![w] })
            .collect();
        Decomposition { depth, kind: DecompositionKind::Trivial, classes }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn kind(&self) -> &DecompositionKind {
        &self.kind
    }

    /// Classes sorted by label.
    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing a word, by membership.
    pub fn class_of(&self, word: &Word) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.binary_search(word).is_ok())
    }

    /// Index of the class with a given label.
    pub fn class_by_label(&self, label: &Word) -> Option<usize> {
        self.classes
            .binary_search_by(|c| c.label.cmp(label))
            .ok()
    }

    /// The pushforward metric on class labels: the distance between the
    /// collapsed images is the distance between their representatives
    /// in `Y`.
    pub fn class_metric(&self, a: usize, b: usize) -> Rational {
        let d = self.classes[a].label.value() - self.classes[b].label.value();
        if d.is_negative() {
            -d
        } else {
            d
        }
    }
}

/// Builds the collapse decomposition: every word outside the `y_prefix`
/// cylinder is identified with `q`, every other word of `Y` stays a point.
pub fn build_collapse_quotient(depth: usize, y_prefix: &Word, q: &Word) -> Result<Decomposition> {
    let l = y_prefix.depth();
    if l == 0 || l > depth {
        return Err(Error::invalid(format!(
            "the cylinder prefix must have depth between 1 and {depth}"
        )));
    }
    if q.depth() != depth {
        return Err(Error::invalid(format!(
            "q must be a depth-{depth} word, got depth {}",
            q.depth()
        )));
    }
    if !q.starts_with(y_prefix) {
        return Err(Error::invalid(format!(
            "q = {q} lies outside the cylinder Y = [{y_prefix}]"
        )));
    }
    let outside: Vec<Word> = Word::all(depth)
        .into_iter()
        .filter(|w| !w.starts_with(y_prefix))
        .collect();
    let mut classes = Vec::new();
    for suffix in Word::all(depth - l) {
        let y = Word::concat(y_prefix, &suffix);
        let members = if &y == q {
            let mut m = outside.clone();
            m.push(q.clone());
            m.sort();
            m
        } else {
            vec![y.clone()]
        };
        classes.push(Class { label: y, members });
    }
    Ok(Decomposition {
        depth,
        kind: DecompositionKind::Collapse { y_prefix: y_prefix.clone(), q: q.clone() },
        classes,
    })
}

/// Whether the decomposition differs from the trivial one, witnessed by a
/// class with at least two members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontrivialityReport {
    pub nontrivial: bool,
    pub witness: Option<Class>,
}

pub fn nontriviality_check(d: &Decomposition) -> NontrivialityReport {
    let witness = d.classes().iter().find(|c| c.size() >= 2).cloned();
    NontrivialityReport { nontrivial: witness.is_some(), witness }
}

/// Outcome of checking `y -> f^{-1}(y)` between the `Y`-words and the
/// classes: a bijection that is an exact isometry for the pushforward
/// metric. Tables are attached at small depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomeoReport {
    pub depth: usize,
    pub y_word_count: usize,
    pub class_count: usize,
    pub bijective: bool,
    pub isometry: bool,
    pub pairs_checked: usize,
    pub mapping: Option<Vec<(Word, Word)>>,
    pub metric_table: Option<Vec<(Word, Word, Rational)>>,
}

impl HomeoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.isometry
    }
}

const TABLE_DEPTH_LIMIT: usize = 6;

pub fn verify_quotient_homeomorphism(d: &Decomposition) -> Result<HomeoReport> {
    let DecompositionKind::Collapse { y_prefix, .. } = d.kind() else {
        return Err(Error::invalid(
            "the homeomorphism check needs a collapse decomposition",
        ));
    };
    let y_words: Vec<Word> = Word::all(d.depth() - y_prefix.depth())
        .into_iter()
        .map(|s| Word::concat(y_prefix, &s))
        .collect();

    // h by membership: the class index holding each Y-word
    let mut image = Vec::with_capacity(y_words.len());
    for y in &y_words {
        let idx = d
            .class_of(y)
            .ok_or_else(|| Error::Internal(format!("word {y} is in no class")))?;
        image.push(idx);
    }
    let mut distinct = image.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let bijective = distinct.len() == y_words.len() && y_words.len() == d.class_count();

    // two-sided Lipschitz with ratio exactly one: the pushforward metric of
    // the classes agrees with the numeric metric on Y
    let mut isometry = true;
    let mut pairs_checked = 0;
    let mut metric_table = Vec::new();
    for i in 0..y_words.len() {
        for j in i + 1..y_words.len() {
            let rho = d.class_metric(image[i], image[j]);
            let direct = {
                let diff = y_words[i].value() - y_words[j].value();
                if diff.is_negative() {
                    -diff
                } else {
                    diff
                }
            };
            if rho != direct {
                isometry = false;
            }
            pairs_checked += 1;
            if d.depth() <= TABLE_DEPTH_LIMIT {
                metric_table.push((y_words[i].clone(), y_words[j].clone(), rho));
            }
        }
    }

    let mapping = (d.depth() <= TABLE_DEPTH_LIMIT).then(|| {
        y_words
            .iter()
            .zip(&image)
            .map(|(y, &idx)| (y.clone(), d.classes()[idx].label.clone()))
            .collect()
    });
    Ok(HomeoReport {
        depth: d.depth(),
        y_word_count: y_words.len(),
        class_count: d.class_count(),
        bijective,
        isometry,
        pairs_checked,
        mapping,
        metric_table: (d.depth() <= TABLE_DEPTH_LIMIT).then_some(metric_table),
    })
}

/// Per-map outcome of the conjugated-contraction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub symbol: u8,
    pub pairs_checked: usize,
    /// `rho(q_j c, q_j c') <= (1/3) rho(c, c')` on every tested pair.
    pub contraction_holds: bool,
    /// The ratio is exactly `1/3` on every tested pair.
    pub ratio_exactly_one_third: bool,
}

/// Outcome of pushing the symbolic contractions through the relabeling
/// `g = h o (prefix insertion)`: the induced maps on classes contract by
/// exactly `1/3` and their images tile the classes exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimReport {
    pub depth: usize,
    /// Depth of the coarse domain words; image classes resolve exactly one
    /// level finer.
    pub domain_depth: usize,
    pub maps: Vec<MapCheck>,
    pub covering_complete: bool,
    pub covering_exactly_once: bool,
}

impl SelfSimReport {
    pub fn passed(&self) -> bool {
        self.covering_complete
            && self.covering_exactly_once
            && self
                .maps
                .iter()
                .all(|m| m.contraction_holds && m.ratio_exactly_one_third)
    }
}

/// Conjugates the symbolic contractions `w -> j.w` through the class
/// relabeling and verifies the contraction bound and the covering
/// identity on the resolvable depth.
///
/// Domain classes are read one symbol coarser than the decomposition: the
/// image of the depth-`(d-1)` cylinder `w` under map `j` is the genuine
/// depth-`d` cylinder `j.w`, so images land exactly on classes and no
/// truncation is ever needed.
pub fn conjugate_selfsimilarity_check(d: &Decomposition) -> Result<SelfSimReport> {
    let DecompositionKind::Collapse { y_prefix, .. } = d.kind() else {
        return Err(Error::invalid(
            "the self-similarity check needs a collapse decomposition",
        ));
    };
    let l = y_prefix.depth();
    let code_depth = d.depth() - l;
    if code_depth < 1 {
        return Err(Error::invalid(format!(
            "depth {} cannot resolve map images; need at least {}",
            d.depth(),
            l + 1
        )));
    }
    let domain_depth = code_depth - 1;
    let domain: Vec<Word> = Word::all(domain_depth);

    // value of the coarse class for the pushforward metric: the label of
    // the cylinder's representative, prefix included
    let coarse_value = |w: &Word| Word::concat(y_prefix, w).value();
    let one_third = rat(1, 3);

    let mut maps = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    for j in 1..=ALPHABET {
        let image_class = |w: &Word| -> Result<usize> {
            let label = Word::concat(y_prefix, &w.prepended(j));
            d.class_by_label(&label)
                .ok_or_else(|| Error::Internal(format!("no class labeled {label}")))
        };
        let mut pairs_checked = 0;
        let mut contraction_holds = true;
        let mut ratio_exactly_one_third = true;
        for a in 0..domain.len() {
            for b in a + 1..domain.len() {
                let img = d.class_metric(image_class(&domain[a])?, image_class(&domain[b])?);
                let src = {
                    let diff = coarse_value(&domain[a]) - coarse_value(&domain[b]);
                    if diff.is_negative() {
                        -diff
                    } else {
                        diff
                    }
                };
                let bound = &one_third * &src;
                if img > bound {
                    contraction_holds = false;
                }
                if img != bound {
                    ratio_exactly_one_third = false;
                }
                pairs_checked += 1;
            }
        }
        for w in &domain {
            images.push(image_class(w)?);
        }
        maps.push(MapCheck { symbol: j, pairs_checked, contraction_holds, ratio_exactly_one_third });
    }

    images.sort_unstable();
    let covering_exactly_once = images.len() == d.class_count()
        && images.windows(2).all(|p| p[0] + 1 == p[1])
        && images.first() == Some(&0);
    let covering_complete = {
        let mut distinct = images.clone();
        distinct.dedup();
        distinct.len() == d.class_count()
    };

    Ok(SelfSimReport {
        depth: d.depth(),
        domain_depth,
        maps,
        covering_complete,
        covering_exactly_once,
    })
}

/// What to compare against the code space.
pub enum CmtsComparand<'a> {
    /// The depth-`k` code space itself; the conjugacy is the identity.
    FullSpace { depth: usize },
    /// A prefix cylinder; the conjugacy is the shift dropping the prefix.
    YCylinder { depth: usize, prefix: &'a Word },
    /// A collapse decomposition; the conjugacy composes the class
    /// relabeling with the shift.
    Decomposition(&'a Decomposition),
}

/// Witness that a space is, at finite depth, an exactly rescaled copy of
/// the code space: a bijection onto the depth-`target` words whose metric
/// expands by exactly `3^l` on every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub kind: &'static str,
    pub source_depth: usize,
    pub target_depth: usize,
    pub word_count: usize,
    pub bijective: bool,
    pub expansion_factor: Rational,
    pub expansion_exact: bool,
    pub pairs_checked: usize,
}

impl ConjugacyReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.expansion_exact
    }
}

pub fn homeo_to_cmts_check(comparand: CmtsComparand<'_>) -> Result<ConjugacyReport> {
    let (kind, depth, l, labels): (&'static str, usize, usize, Vec<Word>) = match comparand {
        CmtsComparand::FullSpace { depth } => ("full-space", depth, 0, Word::all(depth)),
        CmtsComparand::YCylinder { depth, prefix } => {
            let l = prefix.depth();
            if l == 0 || l > depth {
                return Err(Error::invalid(format!(
                    "the cylinder prefix must have depth between 1 and {depth}"
                )));
            }
            let labels = Word::all(depth - l)
                .into_iter()
                .map(|s| Word::concat(prefix, &s))
                .collect();
            ("y-cylinder", depth, l, labels)
        }
        CmtsComparand::Decomposition(d) => {
            let DecompositionKind::Collapse { y_prefix, .. } = d.kind() else {
                return Err(Error::invalid(
                    "only collapse decompositions compare against the code space",
                ));
            };
            let labels = d.classes().iter().map(|c| c.label.clone()).collect();
            ("decomposition", d.depth(), y_prefix.depth(), labels)
        }
    };

    let target_depth = depth - l;
    let shifted: Vec<Word> = labels.iter().map(|w| w.shifted(l)).collect();
    let expected = Word::all(target_depth);
    let mut sorted = shifted.clone();
    sorted.sort();
    let bijective = sorted == expected;

    let factor = {
        let mut f = Rational::from_integer(1.into());
        for _ in 0..l {
            f *= rat(3, 1);
        }
        f
    };
    let mut expansion_exact = true;
    let mut pairs_checked = 0;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let src = {
                let diff = labels[i].value() - labels[j].value();
                if diff.is_negative() {
                    -diff
                } else {
                    diff
                }
            };
            let dst = {
                let diff = shifted[i].value() - shifted[j].value();
                if diff.is_negative() {
                    -diff
                } else {
                    diff
                }
            };
            if dst != &factor * &src {
                expansion_exact = false;
            }
            pairs_checked += 1;
        }
    }

    Ok(ConjugacyReport {
        kind,
        source_depth: depth,
        target_depth,
        word_count: labels.len(),
        bijective,
        expansion_factor: factor,
        expansion_exact,
        pairs_checked,
    })
}

/// One stage of the iterated construction, with all of its checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientIteration {
    pub index: usize,
    pub depth: usize,
    pub class_count: usize,
    pub big_class_size: usize,
    pub nontrivial: bool,
    pub witness: Option<Class>,
    pub homeo: HomeoReport,
    pub selfsim: SelfSimReport,
    pub conjugacy: ConjugacyReport,
}

impl QuotientIteration {
    pub fn passed(&self) -> bool {
        self.nontrivial && self.homeo.passed() && self.selfsim.passed() && self.conjugacy.passed()
    }
}

/// Runs the collapse construction `n` times. After each stage the classes
/// are relabeled through the verified shift conjugacy onto the full code
/// space one prefix shorter, and the construction restarts there; each
/// stage consumes `prefix depth` symbols of resolution.
///
/// `q_first` overrides the collapsed point of the first stage only; later
/// stages use the leftmost word of their cylinder.
pub fn iterate_quotients(
    n: usize,
    depth: usize,
    y_prefix: &Word,
    q_first: Option<&Word>,
) -> Result<Vec<QuotientIteration>> {
    if n == 0 {
        return Err(Error::invalid("at least one iteration is required"));
    }
    let l = y_prefix.depth();
    if l == 0 {
        return Err(Error::invalid("the cylinder prefix must be non-empty"));
    }
    let required = n * l + 1;
    if depth < required {
        return Err(Error::invalid(format!(
            "depth {depth} is too small for {n} iterations; need at least {required}"
        )));
    }

    let mut reports = Vec::with_capacity(n);
    let mut current_depth = depth;
    for index in 1..=n {
        let q = match (index, q_first) {
            (1, Some(q)) => q.clone(),
            _ => {
                let mut w = y_prefix.symbols().to_vec();
                w.extend(std::iter::repeat(1).take(current_depth - l));
                Word::new(w)?
            }
        };
        let d = build_collapse_quotient(current_depth, y_prefix, &q)?;
        let homeo = verify_quotient_homeomorphism(&d)?;
        let selfsim = conjugate_selfsimilarity_check(&d)?;
        let conjugacy = homeo_to_cmts_check(CmtsComparand::Decomposition(&d))?;
        let nontriv = nontriviality_check(&d);
        let big_class_size = d.classes().iter().map(Class::size).max().unwrap_or(0);
        reports.push(QuotientIteration {
            index,
            depth: current_depth,
            class_count: d.class_count(),
            big_class_size,
            nontrivial: nontriv.nontrivial,
            witness: nontriv.witness,
            homeo,
            selfsim,
            conjugacy,
        });
        // re-canonicalize: the classes are exactly the depth-(k - l) words
        current_depth -= l;
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_values_are_left_endpoints() {
        assert_eq!(w("1").value(), rat_int(0));
        assert_eq!(w("2").value(), rat(2, 3));
        assert_eq!(w("12").value(), rat(2, 9));
        assert_eq!(w("21").value(), rat(2, 3));
        assert_eq!(w("22").value(), rat(8, 9));
        assert_eq!(Word::empty().value(), rat_int(0));
    }

    #[test]
    fn word_display_round_trip() {
        for s in ["1", "2", "1212", "-"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("13".parse::<Word>().is_err());
        assert!(Word::new(vec![0]).is_err());
    }

    #[test]
    fn all_words_are_lexicographic_and_complete() {
        let words = Word::all(3);
        assert_eq!(words.len(), 8);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(words[0], w("111"));
        assert_eq!(words[7], w("222"));
    }

    #[test]
    fn collapse_quotient_depth_two() {
        let d = build_collapse_quotient(2, &w("1"), &w("11")).unwrap();
        assert_eq!(d.class_count(), 2);
        assert_eq!(d.classes()[0].label, w("11"));
        assert_eq!(d.classes()[0].members, vec![w("11"), w("21"), w("22")]);
        assert_eq!(d.classes()[1].label, w("12"));
        assert_eq!(d.classes()[1].members, vec![w("12")]);
    }

    #[test]
    fn collapse_quotient_depth_one_is_a_single_class() {
        let d = build_collapse_quotient(1, &w("1"), &w("1")).unwrap();
        assert_eq!(d.class_count(), 1);
        assert_eq!(d.classes()[0].members, vec![w("1"), w("2")]);
    }

    #[test]
    fn trivial_decomposition_is_all_singletons() {
        let d = Decomposition::trivial(3);
        assert_eq!(d.class_count(), 8);
        assert!(d.classes().iter().all(|c| c.size() == 1));
        let report = nontriviality_check(&d);
        assert!(!report.nontrivial);
        assert!(report.witness.is_none());
    }

    #[test]
    fn q_outside_y_is_rejected() {
        assert!(build_collapse_quotient(2, &w("1"), &w("21")).is_err());
        assert!(build_collapse_quotient(2, &w("1"), &w("1")).is_err()); // wrong depth
        assert!(build_collapse_quotient(2, &w("111"), &w("11")).is_err()); // prefix too deep
    }

    #[test]
    fn nontriviality_witnesses() {
        let d2 = build_collapse_quotient(2, &w("1"), &w("11")).unwrap();
        let r2 = nontriviality_check(&d2);
        assert!(r2.nontrivial);
        assert_eq!(r2.witness.unwrap().members, vec![w("11"), w("21"), w("22")]);

        let d1 = build_collapse_quotient(1, &w("1"), &w("1")).unwrap();
        let r1 = nontriviality_check(&d1);
        assert!(r1.nontrivial);
        assert_eq!(r1.witness.unwrap().members, vec![w("1"), w("2")]);
    }

    #[test]
    fn homeomorphism_at_depth_three() {
        let d = build_collapse_quotient(3, &w("1"), &w("111")).unwrap();
        let report = verify_quotient_homeomorphism(&d).unwrap();
        assert_eq!(report.y_word_count, 4);
        assert_eq!(report.class_count, 4);
        assert!(report.bijective);
        assert!(report.isometry);
        assert_eq!(report.pairs_checked, 6);
        assert!(report.mapping.is_some());
        assert!(report.metric_table.is_some());
    }

    #[test]
    fn homeomorphism_rejects_trivial_decompositions() {
        assert!(verify_quotient_homeomorphism(&Decomposition::trivial(2)).is_err());
    }

    #[test]
    fn class_metric_is_the_pushforward_of_the_line_metric() {
        let d = build_collapse_quotient(3, &w("1"), &w("111")).unwrap();
        for (i, a) in d.classes().iter().enumerate() {
            assert_eq!(d.class_metric(i, i), rat_int(0));
            for (j, b) in d.classes().iter().enumerate() {
                let direct = {
                    let diff = a.label.value() - b.label.value();
                    if diff.is_negative() {
                        -diff
                    } else {
                        diff
                    }
                };
                assert_eq!(d.class_metric(i, j), direct);
                assert_eq!(d.class_metric(i, j), d.class_metric(j, i));
            }
        }
    }

    #[test]
    fn selfsimilarity_contracts_by_exactly_one_third() {
        let d = build_collapse_quotient(4, &w("1"), &w("1111")).unwrap();
        let report = conjugate_selfsimilarity_check(&d).unwrap();
        assert_eq!(report.domain_depth, 2);
        for m in &report.maps {
            assert!(m.contraction_holds, "map {}", m.symbol);
            assert!(m.ratio_exactly_one_third, "map {}", m.symbol);
            assert_eq!(m.pairs_checked, 6);
        }
        assert!(report.covering_complete);
        assert!(report.covering_exactly_once);
    }

    #[test]
    fn selfsimilarity_needs_resolvable_depth() {
        let d = build_collapse_quotient(1, &w("1"), &w("1")).unwrap();
        let err = conjugate_selfsimilarity_check(&d).unwrap_err();
        match err {
            Error::InvalidInput(msg) => assert!(msg.contains("at least 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_relabeling_reproduces_the_symbolic_maps() {
        // with g = identity (trivial decompositions), the induced map is
        // plain prepending: class-of(j.w) at depth d+1 is the singleton
        // labeled j.w
        let coarse = Decomposition::trivial(2);
        let fine = Decomposition::trivial(3);
        for j in 1..=ALPHABET {
            for c in coarse.classes() {
                let image = c.label.prepended(j);
                let idx = fine.class_of(&image).unwrap();
                assert_eq!(fine.classes()[idx].label, image);
            }
        }
    }

    #[test]
    fn shift_conjugacy_on_the_cylinder() {
        let report = homeo_to_cmts_check(CmtsComparand::YCylinder { depth: 4, prefix: &w("1") })
            .unwrap();
        assert_eq!(report.target_depth, 3);
        assert_eq!(report.word_count, 8);
        assert!(report.bijective);
        assert_eq!(report.expansion_factor, rat_int(3));
        assert!(report.expansion_exact);
    }

    #[test]
    fn full_space_conjugacy_is_the_identity() {
        let report = homeo_to_cmts_check(CmtsComparand::FullSpace { depth: 3 }).unwrap();
        assert!(report.bijective);
        assert_eq!(report.expansion_factor, rat_int(1));
        assert!(report.expansion_exact);
    }

    #[test]
    fn decomposition_conjugacy_composes() {
        let d = build_collapse_quotient(3, &w("1"), &w("111")).unwrap();
        let report = homeo_to_cmts_check(CmtsComparand::Decomposition(&d)).unwrap();
        assert_eq!(report.kind, "decomposition");
        assert_eq!(report.target_depth, 2);
        assert!(report.passed());
    }

    #[test]
    fn iterated_quotients_pass_their_checks() {
        let reports = iterate_quotients(3, 6, &w("1"), None).unwrap();
        assert_eq!(reports.len(), 3);
        for (i, r) in reports.iter().enumerate() {
            assert_eq!(r.index, i + 1);
            assert_eq!(r.depth, 6 - i);
            assert!(r.passed(), "iteration {}", r.index);
        }
        // a single iteration reproduces the one-shot construction
        let single = iterate_quotients(1, 5, &w("1"), None).unwrap();
        let d = build_collapse_quotient(5, &w("1"), &w("11111")).unwrap();
        assert_eq!(single[0].class_count, d.class_count());
        assert_eq!(single[0].homeo, verify_quotient_homeomorphism(&d).unwrap());
    }

    #[test]
    fn iteration_preconditions() {
        assert!(iterate_quotients(0, 6, &w("1"), None).is_err());
        let err = iterate_quotients(3, 3, &w("1"), None).unwrap_err();
        match err {
            Error::InvalidInput(msg) => assert!(msg.contains("need at least 4"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partition_laws_for_all_small_collapses() {
        for depth in 1..=6usize {
            for prefix_len in 1..=2usize.min(depth) {
                for prefix in Word::all(prefix_len) {
                    for suffix in Word::all(depth - prefix_len) {
                        let q = Word::concat(&prefix, &suffix);
                        let d = build_collapse_quotient(depth, &prefix, &q).unwrap();
                        check_partition_laws(&d, depth);
                    }
                }
            }
            check_partition_laws(&Decomposition::trivial(depth), depth);
        }
    }

    fn check_partition_laws(d: &Decomposition, depth: usize) {
        let mut all: Vec<Word> = d
            .classes()
            .iter()
            .flat_map(|c| c.members.iter().cloned())
            .collect();
        let count = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), count, "classes overlap");
        assert_eq!(all, Word::all(depth), "classes do not cover");
        let non_singletons = d.classes().iter().filter(|c| c.size() > 1).count();
        match d.kind() {
            DecompositionKind::Trivial => assert_eq!(non_singletons, 0),
            DecompositionKind::Collapse { .. } => assert_eq!(non_singletons, 1),
        }
    }

    #[test]
    fn pushforward_metric_axioms_exhaustive_small_depth() {
        for depth in 1..=5usize {
            let q = Word::ones(depth);
            let d = build_collapse_quotient(depth, &w("1"), &q).unwrap();
            let n = d.class_count();
            for i in 0..n {
                assert_eq!(d.class_metric(i, i), rat_int(0));
                for j in 0..n {
                    let dij = d.class_metric(i, j);
                    assert_eq!(dij, d.class_metric(j, i));
                    assert!(!dij.is_negative());
                    if i != j {
                        assert!(dij.is_positive(), "distinct classes at distance zero");
                    }
                    for k in 0..n {
                        assert!(d.class_metric(i, k) <= &dij + d.class_metric(j, k));
                    }
                }
            }
        }
    }
}
