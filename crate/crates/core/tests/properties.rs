use proptest::prelude::*;

use murai::analysis::{chordality, neighborliness};
use murai::{
    facet_set, is_isomorphic, sr_complex, CompositionVector, Monomial, Multicomplex, SimplicialComplex, Vertex,
};

/// A proper multicomplex over a small `c`, from a random generator pick.
fn arb_multicomplex(max_m: usize, max_c: u32) -> impl Strategy<Value = Multicomplex> {
    prop::collection::vec(1..=max_c, 1..=max_m)
        .prop_flat_map(|c| {
            let cells: u32 = c.iter().map(|e| e + 1).product();
            (Just(c), prop::collection::vec(0..cells, 1..4))
        })
        .prop_filter_map("not proper", |(entries, picks)| {
            let c = CompositionVector::new(entries.clone()).unwrap();
            let gens: Vec<Monomial> = picks
                .iter()
                .map(|&p| {
                    let mut rest = p;
                    Monomial::new(
                        entries
                            .iter()
                            .map(|&e| {
                                let d = rest % (e + 1);
                                rest /= e + 1;
                                d
                            })
                            .collect(),
                    )
                })
                .collect();
            Multicomplex::from_generators(&c, &gens).ok().filter(Multicomplex::is_proper)
        })
}

/// A nonempty complex on up to `n` vertices of one axis.
fn arb_complex(axis: u16, n: u16) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0..n, 1..=n as usize), 1..5).prop_map(move |facets| {
        let universe: Vec<Vertex> = (0..n).map(|i| Vertex::new(axis, i)).collect();
        let facets: Vec<Vec<Vertex>> =
            facets.iter().map(|f| f.iter().map(|&i| Vertex::new(axis, i)).collect()).collect();
        SimplicialComplex::from_facets(universe, &facets).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn routes_agree(m in arb_multicomplex(3, 3)) {
        prop_assert_eq!(sr_complex(&m).unwrap(), facet_set(&m).unwrap());
    }

    #[test]
    fn dual_is_an_involution_with_the_same_sphere(m in arb_multicomplex(3, 3)) {
        let d = m.alexander_dual().unwrap();
        prop_assert_eq!(&d.alexander_dual().unwrap(), &m);
        prop_assert!(is_isomorphic(&facet_set(&d).unwrap(), &facet_set(&m).unwrap(), 24).unwrap().is_some());
    }

    #[test]
    fn generators_round_trip(m in arb_multicomplex(3, 4)) {
        let back = Multicomplex::from_generators(m.c(), &m.generators()).unwrap();
        prop_assert_eq!(&back, &m);
        let text = murai::format_monomials(&m.generators());
        prop_assert_eq!(murai::parse_monomials(&text).unwrap(), m.generators());
    }

    #[test]
    fn facet_text_round_trip(m in arb_multicomplex(3, 3)) {
        let k = facet_set(&m).unwrap();
        let back = SimplicialComplex::parse_facets(&k.to_text()).unwrap();
        prop_assert_eq!(back.facet_set(), k.facet_set());
    }

    #[test]
    fn invariants_survive_relabeling(m in arb_multicomplex(3, 3), seed in any::<u64>()) {
        let k = facet_set(&m).unwrap();
        let n = k.universe().len();
        // a seeded permutation of the universe onto fresh labels
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            order.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let universe = k.universe().to_vec();
        let l = k
            .relabel(|v| {
                let i = universe.iter().position(|&w| w == v).unwrap();
                Vertex::new(9, order[i] as u16)
            })
            .unwrap();
        prop_assert!(is_isomorphic(&k, &l, 24).unwrap().is_some());
        prop_assert_eq!(k.f_vector(), l.f_vector());
        prop_assert_eq!(k.is_pseudomanifold(), l.is_pseudomanifold());
        prop_assert_eq!(chordality(&k).chordal, chordality(&l).chordal);
        prop_assert_eq!(neighborliness(&k), neighborliness(&l));
    }

    #[test]
    fn reduced_euler_of_join(k in arb_complex(1, 5), l in arb_complex(2, 5)) {
        let reduced = |x: &SimplicialComplex| x.euler_characteristic() - 1;
        let j = k.join(&l).unwrap();
        prop_assert_eq!(reduced(&j), -reduced(&k) * reduced(&l));
    }
}
