use std::sync::OnceLock;

use facposet::connectivity::chain_graph;
use facposet::fixtures::{fixture_interval, Family};
use facposet::hurwitz::{hurwitz_graph, hurwitz_move, hurwitz_orbits, Direction};
use facposet::orders::{
    all_orders, enumerate_compatible_orders, is_compatible, is_el_labeling, is_totally_well_covered,
    rising_factorizations,
};
use facposet::poset::{duality_check, maximal_chains, mobius_hall, mobius_recursive, subinterval, Chain};
use facposet::scan::{collect_instances, dihedral8_generators, symmetric_generators, ScanSource};
use facposet::{GeneratorOrder, LabeledInterval, Limits};
use proptest::prelude::*;

const CAP: usize = 100_000;

struct Case {
    l: LabeledInterval,
    chains: Vec<Chain>,
    compatible: Vec<GeneratorOrder>,
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.l.name().unwrap_or("unnamed"))
    }
}

fn corpus() -> &'static [Case] {
    static CORPUS: OnceLock<Vec<Case>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut ls: Vec<LabeledInterval> =
            ["dihedral8_rt", "ex44_rrrt", "ex46_rrt", "ex513_rst", "ex611_abb", "thm612_n3", "thm612_n4"]
                .iter()
                .map(|n| fixture_interval(n).unwrap())
                .collect();
        let mut fams: Vec<(Family, usize)> = (3..=5).map(|n| (Family::SymLongCycle, n)).collect();
        fams.extend((1..=6).map(|n| (Family::Boolean, n)));
        for source in [
            ScanSource::Families(fams),
            ScanSource::ConjugationClosedSubsets {
                ambient: dihedral8_generators(),
                target_lengths: vec![2, 3],
                max_classes: 8,
            },
            ScanSource::ConjugationClosedSubsets {
                ambient: symmetric_generators(3),
                target_lengths: vec![1, 2, 3],
                max_classes: 8,
            },
        ] {
            ls.extend(collect_instances(&source, &Limits::default()).unwrap().into_iter().map(|s| s.interval));
        }
        ls.into_iter()
            .map(|l| {
                let chains = maximal_chains(&l, CAP).unwrap();
                let compatible = enumerate_compatible_orders(&l, 1 << 22).unwrap();
                Case { l, chains, compatible }
            })
            .collect()
    })
}

fn case() -> impl Strategy<Value = &'static Case> {
    (0..corpus().len()).prop_map(|i| &corpus()[i])
}

fn random_order(l: &LabeledInterval, seed: u64) -> GeneratorOrder {
    let mut labels = l.occurring_labels();
    let mut s = seed;
    for i in (1..labels.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        labels.swap(i, (s >> 33) as usize % (i + 1));
    }
    GeneratorOrder(labels)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 192, ..ProptestConfig::default() })]

    #[test]
    fn hurwitz_moves_satisfy_braid_relations(c in case(), pick in any::<prop::sample::Index>(), i in 1usize..8, j in 1usize..8) {
        let n = c.l.rank();
        prop_assume!(n >= 2);
        let chain = pick.get(&c.chains);
        let (i, j) = ((i - 1) % (n - 1) + 1, (j - 1) % (n - 1) + 1);
        let s = |x: &Chain, k: usize| hurwitz_move(&c.l, x, k, Direction::Forward).unwrap();
        let back = hurwitz_move(&c.l, &s(chain, i), i, Direction::Inverse).unwrap();
        prop_assert_eq!(&back, chain);
        if i + 1 < n {
            prop_assert_eq!(s(&s(&s(chain, i), i + 1), i), s(&s(&s(chain, i + 1), i), i + 1));
        }
        if i.abs_diff(j) >= 2 {
            prop_assert_eq!(s(&s(chain, i), j), s(&s(chain, j), i));
        }
    }

    #[test]
    fn hurwitz_moves_change_one_element(c in case(), pick in any::<prop::sample::Index>(), i in 1usize..8) {
        let n = c.l.rank();
        prop_assume!(n >= 2);
        let chain = pick.get(&c.chains);
        let i = (i - 1) % (n - 1) + 1;
        let moved = hurwitz_move(&c.l, chain, i, Direction::Forward).unwrap();
        let diff = chain.0.iter().zip(&moved.0).filter(|(a, b)| a != b).count();
        prop_assert!(diff <= 1);
    }

    #[test]
    fn orbits_never_exceed_rise(c in case(), seed in any::<u64>()) {
        let orbits = hurwitz_orbits(&c.l, CAP).unwrap().len();
        let ord = random_order(&c.l, seed);
        prop_assert!(orbits <= rising_factorizations(&c.l, &ord, CAP).unwrap().len());
    }

    #[test]
    fn el_iff_compatible_and_totally_well_covered(c in case(), seed in any::<u64>()) {
        let ord = random_order(&c.l, seed);
        let el = is_el_labeling(&c.l, &ord).unwrap().holds;
        let comp = is_compatible(&c.l, &ord).unwrap().compatible;
        let twc = is_totally_well_covered(&c.l, &ord).unwrap().holds;
        prop_assert_eq!(el, comp && twc);
        prop_assert_eq!(comp, c.compatible.contains(&ord));
    }

    #[test]
    fn compatible_orders_close_under_cyclic_shift(c in case(), pick in any::<prop::sample::Index>(), t in 0usize..12) {
        prop_assume!(!c.compatible.is_empty());
        let ord = pick.get(&c.compatible);
        prop_assert!(is_compatible(&c.l, &ord.cyclic_shift(t)).unwrap().compatible);
    }

    #[test]
    fn compatible_orders_restrict_to_intervals(c in case(), pick in any::<prop::sample::Index>(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        prop_assume!(!c.compatible.is_empty());
        let ord = pick.get(&c.compatible);
        let (x, y) = (x.index(c.l.node_count()), y.index(c.l.node_count()));
        prop_assume!(c.l.leq(x, y) && x != y);
        let sub = subinterval(&c.l, x, y).unwrap();
        let labels = sub.occurring_labels();
        let restricted = GeneratorOrder(ord.0.iter().copied().filter(|a| labels.contains(a)).collect());
        prop_assert!(is_compatible(&sub, &restricted).unwrap().compatible);
    }
}

#[test]
fn hurwitz_orbits_refine_chain_components() {
    for c in corpus() {
        let h = hurwitz_graph(&c.l, CAP).unwrap();
        let g = chain_graph(&c.l, CAP).unwrap();
        assert!(h.components().len() >= g.components().len());
        let mut comp = vec![0; g.chains.len()];
        for (k, cs) in g.components().iter().enumerate() {
            for &i in cs {
                comp[i] = k;
            }
        }
        for &(a, b) in &h.edges {
            let (ia, ib) = (
                g.chains.iter().position(|x| *x == h.chains[a]).unwrap(),
                g.chains.iter().position(|x| *x == h.chains[b]).unwrap(),
            );
            assert_eq!(comp[ia], comp[ib]);
        }
    }
}

#[test]
fn compatible_orders_imply_local_hurwitz_connectivity() {
    for c in corpus().iter().filter(|c| !c.compatible.is_empty()) {
        assert!(facposet::hurwitz::is_locally_hurwitz_connected(&c.l).unwrap().0);
    }
}

#[test]
fn mobius_methods_agree() {
    for c in corpus() {
        assert_eq!(mobius_recursive(&c.l), mobius_hall(&c.l));
    }
}

#[test]
fn group_intervals_are_self_dual() {
    for c in corpus().iter().filter(|c| c.l.group().is_some()) {
        assert!(duality_check(&c.l, 1 << 16).unwrap().self_dual);
    }
}

#[test]
fn small_alphabets_match_exhaustive_compatibility() {
    for c in corpus().iter().filter(|c| c.l.occurring_labels().len() <= 6) {
        let n = all_orders(&c.l).into_iter().filter(|o| is_compatible(&c.l, o).unwrap().compatible).count();
        assert_eq!(n, c.compatible.len());
    }
}
