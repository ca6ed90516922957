//! Shared helpers for the integration suites: a seeded random diagram
//! generator producing arbitrary valid square bridge diagrams.

use rand::seq::SliceRandom;
use rand::Rng;

use obforge::sbd::{HSeg, SquareBridgeDiagram, VSeg};

/// Random valid diagram on `n` rows and columns: two permutations `f, g`
/// of `1..=n` with `f(i) != g(i)` give the endpoint columns of each row
/// segment; the column segments are forced by the corner condition.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize) -> SquareBridgeDiagram {
    loop {
        let mut f: Vec<usize> = (1..=n).collect();
        f.shuffle(rng);
        let mut g: Vec<usize> = (1..=n).collect();
        g.shuffle(rng);
        if f.iter().zip(&g).any(|(a, b)| a == b) {
            continue;
        }
        let hsegs: Vec<HSeg> = (0..n)
            .map(|i| HSeg {
                row: i + 1,
                col_lo: f[i].min(g[i]),
                col_hi: f[i].max(g[i]),
            })
            .collect();
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, (&a, &b)) in f.iter().zip(&g).enumerate() {
            ends[a].push(i + 1);
            ends[b].push(i + 1);
        }
        let vsegs: Vec<VSeg> = (1..=n)
            .map(|j| VSeg {
                col: j,
                row_lo: ends[j][0].min(ends[j][1]),
                row_hi: ends[j][0].max(ends[j][1]),
            })
            .collect();
        return SquareBridgeDiagram::new(hsegs, vsegs).expect("generator yields valid diagrams");
    }
}
