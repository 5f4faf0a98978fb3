//! Sequence operators shared by the two solvers.
//!
//! Cut points and positions are 1-based and inclusive, matching how the
//! operators are usually written down by hand.

use rand::Rng;

use crate::cost::Colouring;

/// Draws `1 <= c1 <= c2 <= n` from two independent uniform positions.
pub fn draw_cut_points<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(1..=n);
    let b = rng.gen_range(1..=n);
    (a.min(b), a.max(b))
}

/// Two distinct uniform positions in `1..=n`. Requires `n >= 2`.
pub fn draw_distinct_positions<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    debug_assert!(n >= 2);
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Copy of `base` with positions `c1..=c2` taken from `donor`.
pub fn splice(base: &Colouring, donor: &Colouring, c1: usize, c2: usize) -> Colouring {
    debug_assert_eq!(base.len(), donor.len());
    debug_assert!(1 <= c1 && c1 <= c2 && c2 <= base.len());
    let mut out = base.clone();
    out.colours_mut()[c1 - 1..c2].copy_from_slice(&donor.colours()[c1 - 1..c2]);
    out
}

/// Copy of `col` with positions `i` and `j` exchanged.
pub fn swap_cells(col: &Colouring, i: usize, j: usize) -> Colouring {
    let mut out = col.clone();
    out.colours_mut().swap(i - 1, j - 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cut_points_cover_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = [[false; 5]; 5];
        for _ in 0..2000 {
            let (a, b) = draw_cut_points(4, &mut rng);
            assert!(1 <= a && a <= b && b <= 4);
            seen[a][b] = true;
        }
        for a in 1..=4usize {
            assert!(seen[a][a..].iter().all(|&s| s), "a={a}: some pair never drawn");
        }
    }

    #[test]
    fn distinct_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let (i, j) = draw_distinct_positions(3, &mut rng);
            assert_ne!(i, j);
            assert!((1..=3).contains(&i) && (1..=3).contains(&j));
        }
        let (i, j) = draw_distinct_positions(2, &mut rng);
        assert_eq!(i + j, 3);
    }
}
