use jumpspec::{BarycentricWeights, DerivMatrix, Grid, QuadRule};
use proptest::prelude::*;

/// Sorted distinct nodes on `[a, b]` with both ends included, gaps of at
/// least a tenth of the mean spacing.
fn custom_grid() -> impl Strategy<Value = Grid> {
    (2usize..=14, -3.0f64..3.0, 0.5f64..4.0).prop_flat_map(|(n, a, len)| {
        proptest::collection::vec(0.1f64..1.0, n).prop_map(move |gaps| {
            let total: f64 = gaps.iter().sum();
            let mut nodes = vec![a];
            let mut acc = 0.0;
            for g in &gaps[..n - 1] {
                acc += g;
                nodes.push(a + len * acc / total);
            }
            nodes.push(a + len);
            Grid::custom(a, a + len, nodes).unwrap()
        })
    })
}

fn poly(c: &[f64], x: f64, k: usize) -> f64 {
    c.iter()
        .enumerate()
        .skip(k)
        .map(|(i, ci)| ci * ((i - k + 1)..=i).map(|v| v as f64).product::<f64>() * x.powi((i - k) as i32))
        .sum()
}

proptest! {
    #[test]
    fn cgl_nodes_are_sorted_and_symmetric(a in -5.0f64..5.0, len in 0.1f64..10.0, n in 1usize..64) {
        let g = Grid::chebyshev_gauss_lobatto(a, a + len, n).unwrap();
        let x = g.nodes();
        prop_assert_eq!(x[0], a);
        prop_assert_eq!(x[n], a + len);
        prop_assert!(x.windows(2).all(|w| w[0] < w[1]));
        let mid = a + 0.5 * len;
        for i in 0..=n {
            prop_assert!(((x[i] - mid) + (x[n - i] - mid)).abs() <= 1e-14 * (a.abs() + len));
        }
    }

    #[test]
    fn composite_matrices_differentiate_polynomials_exactly(
        grid in custom_grid(),
        coeffs in proptest::collection::vec(-1.0f64..1.0, 9),
        m_raw in 1usize..=8,
    ) {
        let n = grid.degree();
        let m = m_raw.min(n);
        let center = 0.5 * (grid.a() + grid.b());
        let half = 0.5 * (grid.b() - grid.a());
        let c = &coeffs[..=m];
        let f: Vec<f64> = grid.nodes().iter().map(|&x| poly(c, (x - center) / half, 0)).collect();
        let d = DerivMatrix::new(&grid, 1, m).unwrap();
        for (&x, v) in grid.nodes().iter().zip(d.apply(&f).unwrap()) {
            let exact = poly(c, (x - center) / half, 1) / half;
            prop_assert!((v - exact).abs() <= 1e-8 * exact.abs().max(1.0), "{} vs {}", v, exact);
        }
        // every row only touches its own stencil
        for i in 0..grid.len() {
            let (lo, hi) = d.band(i);
            prop_assert!(hi - lo == m + 1);
            prop_assert!(d.row(i).iter().enumerate().all(|(j, v)| (lo..hi).contains(&j) || *v == 0.0));
        }
    }

    #[test]
    fn quadrature_is_exact_up_to_degree_n(grid in custom_grid(), coeffs in proptest::collection::vec(-1.0f64..1.0, 15)) {
        let n = grid.degree();
        let (a, b) = (grid.a(), grid.b());
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let c = &coeffs[..=n];
        let f: Vec<f64> = grid.nodes().iter().map(|&x| poly(c, (x - center) / half, 0)).collect();
        // int_{-1}^{1} t^i dt, scaled to [a, b]
        let exact: f64 = c.iter().enumerate().map(|(i, ci)| if i % 2 == 0 { 2.0 * ci / (i + 1) as f64 } else { 0.0 }).sum::<f64>() * half;
        let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>() * 2.0 * half;
        let got = QuadRule::new(&grid).integrate(&f).unwrap();
        prop_assert!((got - exact).abs() <= 1e-11 * scale, "{} vs {}", got, exact);
    }

    #[test]
    fn interpolation_reproduces_degree_n_polynomials(grid in custom_grid(), coeffs in proptest::collection::vec(-1.0f64..1.0, 15), t in -1.0f64..1.0) {
        let n = grid.degree();
        let center = 0.5 * (grid.a() + grid.b());
        let half = 0.5 * (grid.b() - grid.a());
        let c = &coeffs[..=n];
        let f: Vec<f64> = grid.nodes().iter().map(|&x| poly(c, (x - center) / half, 0)).collect();
        let w = BarycentricWeights::new(&grid);
        let got = w.interpolate(&f, center + half * t).unwrap();
        prop_assert!((got - poly(c, t, 0)).abs() <= 1e-10);
    }
}
