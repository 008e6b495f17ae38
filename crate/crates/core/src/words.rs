//! Words in the generating isometries and their adjoints.
//!
//! Letters are vertex indices of a graph; two letters commute iff the vertices
//! are adjacent. A [`TraceWord`] is a positive word stored as the
//! lexicographically least member of its commutation class. Words do not carry
//! their graph: every operation takes it explicitly.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{complement, connected_components, Graph};

/// Positive word in normal form. Ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TraceWord {
    letters: Vec<usize>,
}

impl TraceWord {
    pub fn empty() -> Self {
        TraceWord::default()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Labels of the letters, space separated; the empty word renders as `""`.
    pub fn render(&self, g: &Graph) -> String {
        let labels: Vec<&str> = self.letters.iter().map(|&v| g.label(v)).collect();
        labels.join(" ")
    }
}

impl Ord for TraceWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for TraceWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal form of `letters`: the least linearization of the commutation class.
pub fn normal_form(letters: &[usize], g: &Graph) -> Result<TraceWord> {
    for &v in letters {
        g.check_index(v)?;
    }
    Ok(normal_form_unchecked(letters, g))
}

/// [`normal_form`] without index validation.
pub(crate) fn normal_form_unchecked(letters: &[usize], g: &Graph) -> TraceWord {
    let mut rest: Vec<usize> = letters.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // A letter can move to the front iff it commutes with everything before it.
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let a = rest[p];
            if best.is_some_and(|b| rest[b] <= a) {
                continue;
            }
            if rest[..p].iter().all(|&c| c != a && g.adjacent(a, c)) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always available");
        out.push(rest.remove(p));
    }
    TraceWord { letters: out }
}

/// Word in the generators and their adjoints: `(vertex, is_adjoint)` pairs, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StarWord {
    pub factors: Vec<(usize, bool)>,
}

impl StarWord {
    pub fn new(factors: Vec<(usize, bool)>) -> Self {
        StarWord { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The positive word `w`.
    pub fn plain(w: &TraceWord) -> Self {
        StarWord::new(w.letters.iter().map(|&v| (v, false)).collect())
    }

    /// The adjoint `w*` of a positive word.
    pub fn adjoint_of(w: &TraceWord) -> Self {
        StarWord::new(w.letters.iter().rev().map(|&v| (v, true)).collect())
    }

    /// `w1 w2*`; the zero operator has no word and yields `None`.
    pub fn from_reduced(r: &ReducedForm) -> Option<Self> {
        match r {
            ReducedForm::Zero => None,
            ReducedForm::Word { w1, w2 } => Some(StarWord::plain(w1).concat(&StarWord::adjoint_of(w2))),
        }
    }

    pub fn concat(&self, other: &StarWord) -> StarWord {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        StarWord { factors }
    }

    /// Labels with a trailing `*` on adjoint letters, space separated.
    pub fn render(&self, g: &Graph) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(v, star)| if star { format!("{}*", g.label(v)) } else { g.label(v).to_string() })
            .collect();
        parts.join(" ")
    }
}

/// `w1 w2*`, or the zero operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedForm {
    Zero,
    Word { w1: TraceWord, w2: TraceWord },
}

impl ReducedForm {
    pub fn identity() -> Self {
        ReducedForm::Word {
            w1: TraceWord::empty(),
            w2: TraceWord::empty(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ReducedForm::Word { w1, w2 } if w1.is_empty() && w2.is_empty())
    }
}

/// Rewrites a star-word into the form `w1 w2*` or zero.
///
/// Letters are consumed left to right. An adjoint letter is absorbed into `w2`.
/// A plain letter `i` meets the adjoint `V_j*` nearest to it: `V_j* V_i` is the
/// identity if `i = j`, `V_i V_j*` if `i, j` are adjacent (and `i` continues
/// leftwards), and zero otherwise.
pub fn reduce(w: &StarWord, g: &Graph) -> Result<ReducedForm> {
    for &(v, _) in &w.factors {
        g.check_index(v)?;
    }
    // w2 holds c_1..c_m with w2* = V_{c_m}* ... V_{c_1}*, so c_1 is rightmost.
    let mut w1: Vec<usize> = Vec::new();
    let mut w2: Vec<usize> = Vec::new();
    for &(i, star) in &w.factors {
        if star {
            w2.insert(0, i);
        } else if !push_plain(&mut w1, &mut w2, i, g) {
            return Ok(ReducedForm::Zero);
        }
    }
    Ok(ReducedForm::Word {
        w1: normal_form_unchecked(&w1, g),
        w2: normal_form_unchecked(&w2, g),
    })
}

/// Multiplies `w1 w2*` on the right by `V_i`. Returns false if the product is zero.
fn push_plain(w1: &mut Vec<usize>, w2: &mut Vec<usize>, i: usize, g: &Graph) -> bool {
    for k in 0..w2.len() {
        let j = w2[k];
        if j == i {
            w2.remove(k);
            return true;
        }
        if !g.adjacent(i, j) {
            return false;
        }
    }
    // V_i commuted past every adjoint letter.
    w1.push(i);
    true
}

fn check_vertex_in_admissible(g: &Graph, v: usize) -> Result<()> {
    g.check_index(v)?;
    if connected_components(&complement(g)).len() != 1 {
        return Err(Error::Precondition("complement of the graph is not connected".into()));
    }
    Ok(())
}

/// True if `w` avoids `v` and no maximal letter of `w` is adjacent to `v`,
/// i.e. no suffix of `w` can be commuted past `V_v`.
pub fn in_omega(w: &TraceWord, g: &Graph, v: usize) -> bool {
    let l = &w.letters;
    if l.contains(&v) {
        return false;
    }
    (0..l.len()).all(|p| {
        let a = l[p];
        let maximal = l[p + 1..].iter().all(|&c| c != a && g.adjacent(a, c));
        !(maximal && g.adjacent(a, v))
    })
}

/// All normal forms over the vertices other than `v`, of length at most
/// `max_len`, that belong to Ω; ordered by length then lexicographically, so the
/// empty word comes first.
pub fn omega_enumerate(g: &Graph, v: usize, max_len: usize) -> Result<Vec<TraceWord>> {
    check_vertex_in_admissible(g, v)?;
    let alphabet: Vec<usize> = (0..g.vertex_count()).filter(|&s| s != v).collect();
    let words = words_up_to(g, &alphabet, max_len);
    Ok(words.into_iter().filter(|w| in_omega(w, g, v)).collect())
}

/// All normal forms over `alphabet` of length at most `max_len`, sorted.
pub(crate) fn words_up_to(g: &Graph, alphabet: &[usize], max_len: usize) -> Vec<TraceWord> {
    let mut all = vec![TraceWord::empty()];
    let mut level = vec![TraceWord::empty()];
    for _ in 0..max_len {
        let mut next: HashSet<TraceWord> = HashSet::new();
        for w in &level {
            let mut letters = w.letters.clone();
            for &s in alphabet {
                letters.push(s);
                next.insert(normal_form_unchecked(&letters, g));
                letters.pop();
            }
        }
        let mut next: Vec<TraceWord> = next.into_iter().collect();
        next.sort_unstable();
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaOutcome {
    Identity,
    Zero,
    /// Neither identity nor zero; carries the offending reduced form.
    Violation(ReducedForm),
}

/// Reduces `V* q* p V` for `p, q ∈ Ω`; expected to be the identity iff `p = q`, else zero.
pub fn delta_check(p: &TraceWord, q: &TraceWord, g_full: &Graph, v: usize) -> Result<DeltaOutcome> {
    check_vertex_in_admissible(g_full, v)?;
    for w in [p, q] {
        if !in_omega(w, g_full, v) {
            return Err(Error::Precondition(format!(
                "word [{}] is not in Omega for vertex {}",
                w.render(g_full),
                g_full.label(v)
            )));
        }
    }
    let word = StarWord::new(vec![(v, true)])
        .concat(&StarWord::adjoint_of(q))
        .concat(&StarWord::plain(p))
        .concat(&StarWord::new(vec![(v, false)]));
    Ok(match reduce(&word, g_full)? {
        ReducedForm::Zero => DeltaOutcome::Zero,
        r if r.is_identity() => DeltaOutcome::Identity,
        r => DeltaOutcome::Violation(r),
    })
}
