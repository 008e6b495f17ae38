use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{smith_normal_form, IntMatrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_k}`,
/// with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
    /// Coordinates of a distinguished element: torsion summands first, then free ones.
    #[serde(serialize_with = "ser_opt_bigints")]
    pub marked_class: Option<Vec<BigInt>>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_opt_bigints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_bigints(v, s),
        None => s.serialize_none(),
    }
}

/// Order of a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
            marked_class: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
            marked_class: None,
        }
    }

    /// `Z_n`; trivial for `n = 1`. Panics for `n = 0`.
    pub fn cyclic(n: u64) -> Self {
        assert!(n > 0, "use FGAbelianGroup::free(1) for Z");
        FGAbelianGroup {
            free_rank: 0,
            torsion: if n > 1 { vec![BigInt::from(n)] } else { Vec::new() },
            marked_class: None,
        }
    }

    pub fn with_marked(mut self, class: Vec<BigInt>) -> Self {
        assert_eq!(class.len(), self.summand_count());
        self.marked_class = Some(class);
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn summand_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Same isomorphism type, ignoring the marked element.
    pub fn isomorphic(&self, other: &FGAbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Order of the element with the given coordinates.
    pub fn element_order(&self, coords: &[BigInt]) -> ElementOrder {
        assert_eq!(coords.len(), self.summand_count());
        let (tors, free) = coords.split_at(self.torsion.len());
        if free.iter().any(|c| !c.is_zero()) {
            return ElementOrder::Infinite;
        }
        let order = tors
            .iter()
            .zip(&self.torsion)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d))));
        ElementOrder::Finite(order)
    }

    pub fn marked_order(&self) -> Option<ElementOrder> {
        self.marked_class.as_ref().map(|c| self.element_order(c))
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Direct sum, renormalised to invariant-factor form. Marked elements are dropped.
    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let gens = self.summand_count() + other.summand_count();
        let mut rel = IntMatrix::zeros(self.torsion.len() + other.torsion.len(), gens);
        let mut row = 0;
        let mut col = 0;
        for g in [self, other] {
            for t in &g.torsion {
                rel[(row, col)] = t.clone();
                row += 1;
                col += 1;
            }
            col += g.free_rank;
        }
        Presentation::new(gens, rel).group()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z_{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Abelian group given by generators and relations; each row of `relations`
/// is one relation, as a coefficient vector over the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), generators);
        Presentation {
            generators,
            relations,
        }
    }

    pub fn from_rows(generators: usize, rows: &[Vec<i64>]) -> Self {
        Presentation::new(generators, IntMatrix::from_rows(generators, rows))
    }

    pub fn solve(&self) -> PresentedGroup {
        PresentedGroup::new(self)
    }

    pub fn group(&self) -> FGAbelianGroup {
        self.solve().group
    }
}

/// A presentation reduced to invariant-factor form, able to map generator
/// combinations to coordinates in that form.
#[derive(Debug, Clone)]
pub struct PresentedGroup {
    pub group: FGAbelianGroup,
    /// Column transform `R` of the Smith form: coordinates of `x` are `x·R`.
    right: IntMatrix,
    /// For each kept summand: (index into `x·R`, modulus, 0 for free).
    summands: Vec<(usize, BigInt)>,
}

impl PresentedGroup {
    fn new(p: &Presentation) -> Self {
        let n = p.generators;
        let snf = smith_normal_form(&p.relations);
        let mut diag = snf.diagonal.clone();
        diag.resize(n, BigInt::zero());
        let summands: Vec<(usize, BigInt)> = diag
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .collect();
        let torsion: Vec<BigInt> = summands
            .iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(_, d)| d.clone())
            .collect();
        let free_rank = summands.len() - torsion.len();
        PresentedGroup {
            group: FGAbelianGroup {
                free_rank,
                torsion,
                marked_class: None,
            },
            right: snf.right,
            summands,
        }
    }

    /// Coordinates of the class of `coeffs` (a combination of generators).
    pub fn class_of(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let y = self.right.left_mul_vec(coeffs);
        self.summands
            .iter()
            .map(|(i, d)| if d.is_zero() { y[*i].clone() } else { y[*i].mod_floor(d) })
            .collect()
    }

    pub fn class_of_generator(&self, g: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.right.rows()];
        e[g] = BigInt::one();
        self.class_of(&e)
    }

    /// The group with the class of generator `g` as marked element.
    pub fn marked_by_generator(&self, g: usize) -> FGAbelianGroup {
        self.group.clone().with_marked(self.class_of_generator(g))
    }
}

/// Kernel of the homomorphism `domain → codomain` sending generator `i` of the
/// domain to row `i` of `map` (a combination of codomain generators).
///
/// The caller guarantees the map is well defined (relations go to zero).
pub fn kernel_of_hom(domain: &Presentation, codomain: &Presentation, map: &IntMatrix) -> FGAbelianGroup {
    let m = domain.generators;
    let mc = codomain.generators;
    assert_eq!((map.rows(), map.cols()), (m, mc));

    // Preimage of the codomain relations: x with x·F in the row space of R'.
    // Left kernel of [F; -R'], projected to the first m coordinates.
    let mut neg = codomain.relations.clone();
    for i in 0..neg.rows() {
        neg.negate_row(i);
    }
    let stacked = map.vstack(&neg);
    let snf = smith_normal_form(&stacked);
    let rank = snf.rank();
    let preimage_rows: Vec<Vec<BigInt>> = (rank..stacked.rows())
        .map(|i| snf.left.row(i)[..m].to_vec())
        .collect();
    let h = IntMatrix::from_rows(m, &preimage_rows);

    // Basis of H = rowspace(h): rows i < rank2 of L2·h, equal to d_i times row i of R2^{-1}.
    let snf2 = smith_normal_form(&h);
    let rank2 = snf2.rank();
    let d2 = snf2.invariant_factors().to_vec();

    // Domain relations lie in H; rewrite them in that basis.
    let mut coords = IntMatrix::zeros(domain.relations.rows(), rank2);
    for r in 0..domain.relations.rows() {
        let y = snf2.right.left_mul_vec(domain.relations.row(r));
        for (i, yi) in y.iter().enumerate() {
            if i < rank2 {
                let (q, rem) = yi.div_rem(&d2[i]);
                assert!(rem.is_zero(), "domain relation not in the preimage lattice");
                coords[(r, i)] = q;
            } else {
                assert!(yi.is_zero(), "domain relation not in the preimage lattice");
            }
        }
    }
    Presentation::new(rank2, coords).group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_presentations() {
        let g = Presentation::from_rows(1, &[vec![6]]).group();
        assert_eq!(g.torsion, big(&[6]));
        assert_eq!(g.to_string(), "Z_6");
        assert!(Presentation::from_rows(1, &[vec![1]]).group().is_trivial());
        assert_eq!(Presentation::from_rows(1, &[]).group(), FGAbelianGroup::free(1));
        assert_eq!(Presentation::from_rows(1, &[vec![0]]).group(), FGAbelianGroup::free(1));
    }

    #[test]
    fn mixed_presentation() {
        // <a, b, c | 2a, 3b> = Z_6 ⊕ Z
        let p = Presentation::from_rows(3, &[vec![2, 0, 0], vec![0, 3, 0]]);
        let s = p.solve();
        assert_eq!(s.group.to_string(), "Z_6 ⊕ Z");
        assert_eq!(s.group.element_order(&s.class_of_generator(0)), ElementOrder::Finite(2.into()));
        assert_eq!(s.group.element_order(&s.class_of_generator(1)), ElementOrder::Finite(3.into()));
        assert_eq!(s.group.element_order(&s.class_of(&big(&[1, 1, 0]))), ElementOrder::Finite(6.into()));
        assert_eq!(s.group.element_order(&s.class_of_generator(2)), ElementOrder::Infinite);
    }

    #[test]
    fn relation_combinations_are_zero() {
        let p = Presentation::from_rows(3, &[vec![4, 6, 2], vec![2, -2, 8]]);
        let s = p.solve();
        for r in 0..2 {
            let c = s.class_of(p.relations.row(r));
            let order = s.group.element_order(&c);
            assert_eq!(order, ElementOrder::Finite(1.into()));
        }
    }

    #[test]
    fn group_order_matches_determinant() {
        let p = Presentation::from_rows(2, &[vec![2, 1], vec![1, 3]]);
        assert_eq!(p.group().order(), Some(BigInt::from(5)));
        let p = Presentation::from_rows(2, &[vec![4, 0], vec![0, 6]]);
        let g = p.group();
        assert_eq!(g.torsion, big(&[2, 12]));
        assert_eq!(g.to_string(), "Z_2 ⊕ Z_12");
    }

    #[test]
    fn direct_sum_renormalises() {
        let a = FGAbelianGroup::cyclic(2);
        let b = FGAbelianGroup::cyclic(3);
        assert_eq!(a.direct_sum(&b), FGAbelianGroup::cyclic(6));
        let c = FGAbelianGroup::free(1).direct_sum(&FGAbelianGroup::cyclic(4));
        assert_eq!(c.to_string(), "Z_4 ⊕ Z");
        assert!(FGAbelianGroup::trivial().direct_sum(&FGAbelianGroup::trivial()).is_trivial());
    }

    #[test]
    fn kernels() {
        // multiplication by 3 on Z: kernel 0
        let z = Presentation::from_rows(1, &[]);
        let k = kernel_of_hom(&z, &z, &IntMatrix::from_rows(1, &[vec![3]]));
        assert!(k.is_trivial());
        // multiplication by 2 on Z_4: kernel Z_2
        let z4 = Presentation::from_rows(1, &[vec![4]]);
        let k = kernel_of_hom(&z4, &z4, &IntMatrix::from_rows(1, &[vec![2]]));
        assert_eq!(k, FGAbelianGroup::cyclic(2));
        // Z -> Z_6, 1 ↦ 2: kernel 3Z ≅ Z
        let z6 = Presentation::from_rows(1, &[vec![6]]);
        let k = kernel_of_hom(&z, &z6, &IntMatrix::from_rows(1, &[vec![2]]));
        assert_eq!(k, FGAbelianGroup::free(1));
        // Z^2 -> Z, (a, b) ↦ a - b: kernel Z
        let z2 = Presentation::from_rows(2, &[]);
        let k = kernel_of_hom(&z2, &z, &IntMatrix::from_rows(1, &[vec![1], vec![-1]]));
        assert_eq!(k, FGAbelianGroup::free(1));
        // zero map into the trivial group
        let triv = Presentation::from_rows(0, &[]);
        let k = kernel_of_hom(&z4, &triv, &IntMatrix::zeros(1, 0));
        assert_eq!(k, FGAbelianGroup::cyclic(4));
        // Z_2 ⊕ Z_4 -> Z_4, (a, b) ↦ 2a + b: kernel of order 2
        let d = Presentation::from_rows(2, &[vec![2, 0], vec![0, 4]]);
        let k = kernel_of_hom(&d, &z4, &IntMatrix::from_rows(1, &[vec![2], vec![1]]));
        assert_eq!(k.order(), Some(BigInt::from(2)));
    }

    #[test]
    fn two_generator_examples() {
        assert_eq!(Presentation::from_rows(2, &[vec![2, -3]]).group(), FGAbelianGroup::free(1));
        let g = Presentation::from_rows(2, &[vec![3, 0], vec![0, 3]]).group();
        assert_eq!(g.to_string(), "Z_3 ⊕ Z_3");
    }

    fn arb_relations() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..=5, 0usize..=5).prop_flat_map(|(gens, rels)| {
            let rows = proptest::collection::vec(proptest::collection::vec(-12i64..=12, gens), rels);
            (Just(gens), rows)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn invariant_under_row_operations(
            (gens, rows) in arb_relations(),
            seed in any::<u64>(),
        ) {
            let base = Presentation::from_rows(gens, &rows).group();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            prop_assert_eq!(&Presentation::from_rows(gens, &shuffled).group(), &base);
            if shuffled.len() >= 2 {
                let k = rng.gen_range(-4i64..=4);
                let (a, b) = (0, shuffled.len() - 1);
                let src = shuffled[b].clone();
                for (x, y) in shuffled[a].iter_mut().zip(&src) {
                    *x += k * y;
                }
                shuffled[b].iter_mut().for_each(|x| *x = -*x);
            }
            prop_assert_eq!(&Presentation::from_rows(gens, &shuffled).group(), &base);
        }

        #[test]
        fn order_matches_brute_force_for_square_nonsingular(v in proptest::collection::vec(-6i64..=6, 9)) {
            let rows: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let p = Presentation::from_rows(3, &rows);
            let det = p.relations.determinant();
            let g = p.group();
            if det.is_zero() {
                prop_assert!(g.free_rank > 0);
            } else {
                prop_assert_eq!(g.order(), Some(num_traits::Signed::abs(&det)));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(2).to_string(), "Z^2");
    }
}
