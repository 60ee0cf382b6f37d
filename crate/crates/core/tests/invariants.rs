use meshknit::linalg::{kernel_basis, rank, FieldSpec, Matrix, FAST_PRIME};
use meshknit::mesh::{diamond_cokernel, knit_layers, path_sign_check, PathSpace};
use meshknit::quiver::{build_dihedral_family, build_tube, build_za_inf, PathLength};
use meshknit::Vertex;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const FAST: FieldSpec = FieldSpec::PrimeField { characteristic: FAST_PRIME };

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn even_vertex(radius: i64) -> impl Strategy<Value = Vertex> {
    (-radius..=radius, -radius..=radius).prop_map(|(a, b)| Vertex::dihedral(2 * a, 2 * b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant((r, c, data) in small_matrix(), p in prop::sample::select(vec![2u64, 5, 7, 65521])) {
        for field in [Q, FieldSpec::prime(p).unwrap()] {
            let m = Matrix::from_i64(field, r, c, &data).unwrap();
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }

    #[test]
    fn rank_nullity((r, c, data) in small_matrix()) {
        for field in [Q, FAST] {
            let m = Matrix::from_i64(field, r, c, &data).unwrap();
            let kernel = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + kernel.len(), c);
            for v in &kernel {
                prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn mesh_ranks_agree_across_fields(a in even_vertex(2), (di, dj) in (0i64..=3, 0i64..=3)) {
        let q = build_dihedral_family(4).unwrap();
        let (i, j) = a.coords();
        let u = Vertex::dihedral(i + 2 * di, j + 2 * dj).unwrap();
        let PathLength::Forced(len) = q.path_length(&u, &a) else { unreachable!() };
        let space = PathSpace::build(&q, &u, &a, len, 6).unwrap();
        let over_q = space.hom_space_dense(Q).unwrap();
        prop_assert_eq!(&over_q, &space.hom_space_dense(FAST).unwrap());
        prop_assert_eq!(&over_q, &space.hom_space(Q).unwrap());
        prop_assert_eq!(over_q.dim, 1);
    }

    #[test]
    fn za_reducer_matches_dense(level in 1u32..=3, pos in -2i64..=2, (dl, dp) in (0u32..=2, 0i64..=3)) {
        let q = build_za_inf(5).unwrap();
        let m = Vertex::za(level, pos);
        let u = Vertex::za(level + dl, pos + dp);
        if let PathLength::Forced(len) = q.path_length(&u, &m) {
            let space = PathSpace::build(&q, &u, &m, len, 7).unwrap();
            prop_assert_eq!(space.hom_space_dense(Q).unwrap(), space.hom_space(Q).unwrap());
        }
    }

    #[test]
    fn dihedral_layers_count_the_quadrant(m in even_vertex(1), k in 0u32..=5) {
        let q = build_dihedral_family(3).unwrap();
        let table = knit_layers(&q, &m, k, 3).unwrap();
        prop_assert!(!table.truncated());
        let layer = table.layer(k);
        prop_assert_eq!(layer.len() as u32, k + 1);
        prop_assert!(layer.values().all(|&x| x == 1));
    }

    #[test]
    fn diamond_is_translation_equivariant(m in even_vertex(1), n in 1u32..=2) {
        let q = build_dihedral_family(4).unwrap();
        let base = diamond_cokernel(&q, &Vertex::dihedral(0, 0).unwrap(), n, 4, Q).unwrap();
        let here = diamond_cokernel(&q, &m, n, 4, Q).unwrap();
        let (i, j) = m.coords();
        let moved: Vec<_> = base
            .layers
            .iter()
            .map(|((k, v), x)| (*k, q.tensor_translate(v, (i, j)).unwrap(), *x))
            .collect();
        let direct: Vec<_> = here.layers.iter().map(|((k, v), x)| (*k, *v, *x)).collect();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn sign_reports_are_clean(a in even_vertex(1), (di, dj) in (0i64..=2, 0i64..=2)) {
        let q = build_dihedral_family(3).unwrap();
        let (i, j) = a.coords();
        let u = Vertex::dihedral(i + 2 * di, j + 2 * dj).unwrap();
        let rep = path_sign_check(&q, &u, &a, None, 3, Q).unwrap();
        prop_assert!(rep.ok());
        prop_assert!(rep.classes <= 1);
        // the sign of a path is the parity of its flip distance from the root
        for p in &rep.paths {
            prop_assert_eq!(p.sign, if p.flips % 2 == 0 { 1 } else { -1 });
        }
    }
}

#[test]
fn tube_knitting_stops_before_negative_entries() {
    for n in 3..=7 {
        let q = build_tube(n).unwrap();
        for i in 1..n {
            let t = knit_layers(&q, &Vertex::tube(i), 3 * n, 1).unwrap();
            assert!(t.layers.values().all(|&x| x > 0));
            assert!(t.layers.keys().all(|(k, _)| *k <= t.valid_through));
        }
    }
}
