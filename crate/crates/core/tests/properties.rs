use fibtree::fib::{check_gg, fib, FibSequence};
use fibtree::graph::{expand, path_tree, random_tree, star_tree, Tree, VertexId, VertexKind};
use fibtree::mis::{
    count_mis, count_mis_containing, enumerate_mis, left_count, right_count, verify_result1_general,
    MisCount, MisEnumerator, HARD_ENUMERATION_CAP,
};
use fibtree::symbolic::{BivarPoly, GLinearForm};
use fibtree::xk::XkTower;
use fibtree::Rational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(BivarPoly::zero(), |acc, (da, db, c)| &acc + &BivarPoly::monomial(c, da, db))
    })
}

/// Union-find acyclicity check, independent of `Tree::from_edges`.
fn acyclic(t: &Tree) -> bool {
    let mut parent: Vec<usize> = (0..t.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in t.edges() {
        let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("];")).count();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    (nodes, edges)
}

#[test]
fn corona_sizes_and_degree_sums() {
    for n in 1..=40 {
        let e = expand(&path_tree(n).unwrap());
        let g = e.graph();
        assert_eq!(g.vertex_count(), 2 * n);
        assert_eq!(g.edge_count(), 2 * n - 1);
        let deg_sum: usize = g.vertices().map(|v| g.degree(v).unwrap()).sum();
        assert_eq!(deg_sum, 2 * g.edge_count());
        assert_eq!(dot_counts(&e.to_dot()), (2 * n, 2 * n - 1));
    }
}

#[test]
fn random_trees_up_to_a_thousand_vertices_are_trees() {
    for (n, seed) in [(3, 1), (17, 2), (100, 3), (500, 4), (1000, 5), (1000, 6)] {
        let t = random_tree(n, seed).unwrap();
        assert_eq!(t.edge_count(), n - 1);
        assert!(acyclic(&t));
        let deg_sum: usize = t.vertices().map(|v| t.degree(v).unwrap()).sum();
        assert_eq!(deg_sum, 2 * (n - 1));
    }
}

#[test]
fn result1_holds_on_general_cores() {
    for n in 1..=12 {
        for seed in 0..8 {
            let core = random_tree(n, seed).unwrap();
            let r = verify_result1_general(&core);
            assert!(r.pass(), "{r}");
        }
    }
    for leaves in 1..=6 {
        assert!(verify_result1_general(&star_tree(leaves)).pass());
    }
}

#[test]
fn side_products_match_literal_oracle_counts() {
    let enumerator = MisEnumerator::with_cap(HARD_ENUMERATION_CAP).unwrap();
    for n in 3..=15 {
        let e = expand(&path_tree(n).unwrap());
        for label in e.central_labels() {
            let pos = e.central_position(label).unwrap();
            for kind in [VertexKind::Core, VertexKind::Leaf] {
                let x = e.central_vertex(label, kind).unwrap();
                // Left side: lower positions; right side: higher positions. A
                // leaf's side includes its support vertex.
                let mut left = vec![e.core_vertex(pos)];
                let mut right = vec![e.core_vertex(pos)];
                if kind == VertexKind::Leaf {
                    left.push(x);
                    right.push(x);
                }
                for j in 0..n {
                    let side = if j < pos { &mut left } else if j > pos { &mut right } else { continue };
                    side.push(e.core_vertex(j));
                    side.push(e.leaf_of(j));
                }
                let oracle = |keep: &[VertexId]| {
                    let (sub, map) = e.graph().induced_subtree(keep).unwrap();
                    let local = VertexId(map.binary_search(&x).unwrap());
                    enumerator.enumerate(&sub).unwrap().containing(local).count() as u64
                };
                let l = oracle(&left);
                let r = oracle(&right);
                assert_eq!(left_count(&e, label, kind).unwrap(), MisCount::from(l));
                assert_eq!(right_count(&e, label, kind).unwrap(), MisCount::from(r));
                let lambda = count_mis_containing(e.graph(), x).unwrap();
                assert_eq!(lambda, MisCount::from(l * r), "n={n} label={label} {kind:?}");
            }
        }
    }
}

#[test]
fn containment_never_exceeds_total() {
    for seed in 0..20 {
        let e = expand(&random_tree(10, seed).unwrap());
        let total = count_mis(e.graph());
        for v in e.graph().vertices() {
            assert!(count_mis_containing(e.graph(), v).unwrap() <= total);
        }
    }
}

#[test]
fn fib_recurrence_and_eq1_on_both_sides_of_zero() {
    let seeds = [(0, 1), (2, 1), (-1, 0), (1, 1), (7, -3)];
    for (a, b) in seeds {
        let s = FibSequence::new(a, b);
        let terms = s.terms(-52, 100);
        for w in terms.windows(3) {
            assert_eq!(w[2], &w[0] + &w[1]);
        }
        for n in -20..=60 {
            assert_eq!(s.term(n), &s.beta * fib(n) + &s.alpha * fib(n - 1), "n={n}");
        }
    }
}

#[test]
fn thm2_right_side_is_split_invariant() {
    let s = FibSequence::new(Rational::new(5, 3), Rational::new(-2, 7));
    for n in 1..=20 {
        let first = s.term(n) * s.term(1) + s.term(n - 1) * s.term(0);
        for i in 1..=n {
            let at_i = s.term(n - i + 1) * s.term(i) + s.term(n - i) * s.term(i - 1);
            assert_eq!(at_i, first);
        }
        assert!(check_gg(&s, n, n).unwrap().pass());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_enumeration_on_random_trees(n in 1usize..=16, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        let fam = enumerate_mis(&t).unwrap();
        prop_assert_eq!(count_mis(&t), MisCount::from(fam.len() as u64));
        for v in t.vertices() {
            let by_filter = fam.containing(v).count() as u64;
            prop_assert_eq!(count_mis_containing(&t, v).unwrap(), MisCount::from(by_filter));
        }
    }

    #[test]
    fn linear_combination_of_sequences(
        a1 in rational(), a2 in rational(),
        s1 in (rational(), rational()), s2 in (rational(), rational()),
        n in -15i64..40,
    ) {
        let f1 = FibSequence::new(s1.0, s1.1);
        let f2 = FibSequence::new(s2.0, s2.1);
        let combined = f1.combine(&a1, &f2, &a2);
        prop_assert_eq!(combined.term(n), &a1 * f1.term(n) + &a2 * f2.term(n));
    }

    #[test]
    fn tower_values_independent_of_evaluation_order(
        alpha in rational(), beta in rational(),
        queries in prop::collection::vec((0i64..=6, 1i64..=12), 1..30),
    ) {
        let mut shuffled = XkTower::from_seeds(alpha.clone(), beta.clone());
        let got: Vec<_> = queries.iter().map(|&(k, n)| shuffled.value(k, n).unwrap()).collect();
        let mut fresh = XkTower::from_seeds(alpha, beta);
        for k in 0..=6 {
            for n in 1..=12 {
                fresh.value(k, n).unwrap();
            }
        }
        for (&(k, n), v) in queries.iter().zip(got) {
            prop_assert_eq!(fresh.value(k, n).unwrap(), v);
        }
    }

    #[test]
    fn poly_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &BivarPoly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn poly_text_and_json_round_trip(p in poly()) {
        let parsed: BivarPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &p);
        let json = serde_json::to_string(&p).unwrap();
        let back: BivarPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poly_evaluation_is_a_homomorphism(p in poly(), q in poly(), a in rational(), b in rational()) {
        prop_assert_eq!((&p * &q).eval(&a, &b), p.eval(&a, &b) * q.eval(&a, &b));
        prop_assert_eq!((&p + &q).eval(&a, &b), p.eval(&a, &b) + q.eval(&a, &b));
    }

    #[test]
    fn form_reduction_preserves_values(
        coeffs in prop::collection::vec(poly(), 0..6),
        a in rational(), b in rational(), n in -10i64..20,
    ) {
        let form = GLinearForm::new(coeffs);
        prop_assert_eq!(form.reduce().eval(&a, &b, n), form.eval(&a, &b, n));
    }
}
