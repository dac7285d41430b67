use cutcover::cutspace::{bipartite_density, kneser_cut_size};
use cutcover::graph::{chromatic_number, generate, Family};
use cutcover::invariant::{chi_q, x_exact};
use cutcover::rational::{int, rat};
use cutcover::spectral::{spectrum_cube_layer, theorem_value};
use num_bigint::BigUint;

fn x(f: Family) -> cutcover::Rational {
    x_exact(&generate(f).unwrap()).unwrap().value
}

#[test]
fn complete_graphs_come_in_pairs() {
    for n in 1..=4i64 {
        let want = int(2) - rat(1, n);
        for m in [2 * n - 1, 2 * n].into_iter().filter(|&m| m >= 2) {
            assert_eq!(x(Family::Complete(m as usize)), want, "K_{m}");
            assert_eq!(chi_q(&generate(Family::Complete(m as usize)).unwrap()).unwrap(), int(2 * n));
        }
    }
}

#[test]
fn odd_cycles() {
    for k in 1..=6i64 {
        let g = generate(Family::Cycle(2 * k as usize + 1)).unwrap();
        assert_eq!(x_exact(&g).unwrap().value, int(1) + rat(1, 2 * k));
        assert_eq!(chi_q(&g).unwrap(), int(2) + rat(2, 2 * k - 1));
    }
}

#[test]
fn petersen() {
    let g = generate(Family::Petersen).unwrap();
    assert_eq!(x_exact(&g).unwrap().value, rat(5, 4));
    assert_eq!(chi_q(&g).unwrap(), rat(8, 3));
}

#[test]
fn cube_powers() {
    // (n, k, x): n/k for even k, (n+1)/(k+1) for odd k
    let table = [(3, 2, rat(3, 2)), (4, 3, rat(5, 4)), (2, 2, int(1)), (3, 3, int(1)), (5, 3, rat(3, 2)), (6, 4, rat(3, 2)), (7, 4, rat(7, 4))];
    for (n, k, want) in table {
        assert_eq!(theorem_value(n, k).unwrap().value, want, "({n},{k})");
    }
    assert_eq!(x(Family::CubePower(3, 2)), rat(3, 2));
    assert_eq!(x(Family::CubePower(4, 3)), rat(5, 4));
}

#[test]
fn cube_layer_regularity() {
    let g = generate(Family::CubeLayer(5, 4)).unwrap();
    assert_eq!(g.n(), 32);
    assert_eq!(g.is_regular(), Some(5));
    assert_eq!(spectrum_cube_layer(5, 4).unwrap().degree(), &5.into());
}

#[test]
fn kneser_graphs() {
    assert_eq!(kneser_cut_size(5, 2).unwrap(), BigUint::from(12u32));
    assert_eq!(kneser_cut_size(7, 3).unwrap(), BigUint::from(60u32));
    assert_eq!(kneser_cut_size(2, 1).unwrap(), BigUint::from(1u32));
    let k73 = generate(Family::Kneser(7, 3)).unwrap();
    assert_eq!(chromatic_number(&k73).unwrap(), 3);
    assert_eq!(bipartite_density(&k73).unwrap(), rat(6, 7));
    assert_eq!(x(Family::Kneser(5, 2)), rat(5, 4));
}

#[test]
fn circular_clique_gap() {
    assert_eq!(x(Family::CircularClique(11, 4)), rat(22, 17));
}
