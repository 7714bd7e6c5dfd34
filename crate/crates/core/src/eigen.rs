//! Dense symmetric eigenvalues by cyclic Jacobi rotations.

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<f64> = a.iter().flat_map(|r| r.iter().copied()).collect();
    assert_eq!(m.len(), n * n, "matrix must be square");
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let ev = symmetric_eigenvalues(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_graph() {
        let n = 7;
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if (i + 1) % n == j || (j + 1) % n == i { 1.0 } else { 0.0 }).collect())
            .collect();
        let ev = symmetric_eigenvalues(&a);
        let mut want: Vec<f64> = (0..n).map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in ev.iter().zip(&want) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_preserved() {
        let a = vec![vec![4.0, 1.0, -2.0], vec![1.0, 0.5, 3.0], vec![-2.0, 3.0, -1.0]];
        let ev = symmetric_eigenvalues(&a);
        assert!((ev.iter().sum::<f64>() - 3.5).abs() < 1e-10);
    }
}
