//! Euclidean projection onto the probability simplex with an interior floor.
//!
//! The feasible set is `{x : x_i >= floor, sum x_i = 1}`. Keeping iterates a
//! floor above zero keeps `x log x` terms differentiable along optimizer
//! paths. The algorithm is the standard sort-and-threshold projection applied
//! to the shifted variables `x - floor`.

/// Projects `v` onto `{x : x_i >= floor, sum x_i = 1}`.
///
/// Requires `d >= 1` and `d * floor < 1` so the set is non-empty with
/// interior; panics otherwise since both are static configuration errors.
pub fn project(v: &[f64], floor: f64) -> Vec<f64> {
    let d = v.len();
    assert!(d >= 1, "cannot project an empty vector");
    let mass = 1.0 - d as f64 * floor;
    assert!(
        floor >= 0.0 && mass > 0.0,
        "floor {floor} leaves no interior for dimension {d}"
    );
    // Shift so the constraint becomes z >= 0, sum z = mass.
    let shifted: Vec<f64> = v.iter().map(|x| x - floor).collect();
    let mut sorted = shifted.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("projection input must not contain NaN"));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - mass) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    shifted
        .iter()
        .map(|&z| (z - theta).max(0.0) + floor)
        .collect()
}

/// The barycenter `(1/d, ..., 1/d)`.
pub fn uniform(d: usize) -> Vec<f64> {
    vec![1.0 / d as f64; d]
}

/// True iff `x` lies on the simplex with every coordinate at least `floor`,
/// within `tol` on the normalization.
pub fn contains(x: &[f64], floor: f64, tol: f64) -> bool {
    let sum: f64 = x.iter().sum();
    x.iter().all(|&v| v >= floor) && (sum - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist2(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    }

    #[test]
    fn feasible_points_are_fixed() {
        let x = vec![0.2, 0.3, 0.5];
        let p = project(&x, 1e-12);
        for (a, b) in p.iter().zip(&x) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn hand_worked_projection() {
        // Sorted shifted values [1.5, 0.3, 0.0]: only the largest survives
        // the threshold, theta = 0.5, so the projection is (1, 0, 0).
        let p = project(&[1.5, 0.3, 0.0], 0.0);
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn symmetric_input_projects_to_uniform() {
        let p = project(&[0.9, 0.9], 0.0);
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn floor_is_enforced() {
        let floor = 1e-3;
        let p = project(&[1.0, -5.0, -5.0], floor);
        assert!(contains(&p, floor, 1e-12));
        assert_eq!(p[1], floor);
        assert_eq!(p[2], floor);
    }

    #[test]
    fn projection_is_idempotent() {
        let p = project(&[3.0, -1.0, 0.5, 0.2], 1e-9);
        let pp = project(&p, 1e-9);
        assert!(dist2(&p, &pp) < 1e-24);
    }

    #[test]
    fn projection_is_nearest_feasible_point() {
        // Variational oracle: no feasible comparison point may be closer.
        let v = vec![0.7, -0.3, 1.4, 0.05];
        let floor = 1e-6;
        let p = project(&v, floor);
        assert!(contains(&p, floor, 1e-12));
        let comparisons = [
            vec![0.25, 0.25, 0.25, 0.25],
            vec![0.97, 0.01, 0.01, 0.01],
            vec![0.1, 0.2, 0.3, 0.4],
            vec![0.0001, 0.0001, 0.9997, 0.0001],
        ];
        for w in comparisons {
            assert!(contains(&w, floor, 1e-3));
            assert!(dist2(&v, &p) <= dist2(&v, &w) + 1e-12);
        }
    }
}
