//! Deterministic evaluation of a function over a rational (b,t) grid,
//! with a rayon-backed data-parallel path behind the `parallel` feature
//! and a sequential fallback. Results are identical for both paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::rat::Rat;

/// Rectangular rational grid in the (b,t) slice, row-major from
/// (b_min, t_min), with `b_steps` × `t_steps` sample points inclusive of
/// both ends when the step count is > 1.
#[derive(Clone, Debug)]
pub struct SliceGrid {
    pub b_min: Rat,
    pub b_max: Rat,
    pub t_min: Rat,
    pub t_max: Rat,
    pub b_steps: usize,
    pub t_steps: usize,
}

impl SliceGrid {
    pub fn points(&self) -> Vec<(Rat, Rat)> {
        let coord = |min: &Rat, max: &Rat, steps: usize, i: usize| -> Rat {
            if steps <= 1 {
                min.clone()
            } else {
                let frac = Rat::new((i as i64).into(), ((steps - 1) as i64).into());
                min + (max - min) * frac
            }
        };
        let mut pts = Vec::with_capacity(self.b_steps * self.t_steps);
        for ti in 0..self.t_steps {
            for bi in 0..self.b_steps {
                pts.push((
                    coord(&self.b_min, &self.b_max, self.b_steps, bi),
                    coord(&self.t_min, &self.t_max, self.t_steps, ti),
                ));
            }
        }
        pts
    }
}

/// Sequential reference path.
pub fn map_grid_sequential<T, F>(points: &[(Rat, Rat)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Rat, &Rat) -> T + Sync,
{
    points.iter().map(|(b, t)| f(b, t)).collect()
}

/// Data-parallel path; order of results matches the input order.
#[cfg(feature = "parallel")]
pub fn map_grid_parallel<T, F>(points: &[(Rat, Rat)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Rat, &Rat) -> T + Sync,
{
    points.par_iter().map(|(b, t)| f(b, t)).collect()
}

/// Dispatches to the parallel path when compiled in.
pub fn map_grid<T, F>(points: &[(Rat, Rat)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Rat, &Rat) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_grid_parallel(points, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_grid_sequential(points, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn grid_is_inclusive_and_ordered() {
        let g = SliceGrid {
            b_min: int(-1),
            b_max: int(1),
            t_min: rat(1, 2),
            t_max: rat(3, 2),
            b_steps: 3,
            t_steps: 2,
        };
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (int(-1), rat(1, 2)));
        assert_eq!(pts[2], (int(1), rat(1, 2)));
        assert_eq!(pts[5], (int(1), rat(3, 2)));
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = SliceGrid {
            b_min: int(-2),
            b_max: int(2),
            t_min: rat(1, 3),
            t_max: int(2),
            b_steps: 7,
            t_steps: 5,
        };
        let pts = g.points();
        let f = |b: &Rat, t: &Rat| b * b + t * t - b * t;
        let seq = map_grid_sequential(&pts, f);
        assert_eq!(map_grid(&pts, f), seq);
    }
}
