//! Small dense linear solves by LU factorization with partial pivoting.

/// Relative pivot threshold below which a system is treated as singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

/// Solves `A x = b` in place. `a` is row-major `n × n` and is overwritten by
/// its LU factors; `b` is overwritten by `x`.
///
/// Fails when a pivot falls below [`SINGULAR_PIVOT_RATIO`] times the largest
/// row magnitude of the original matrix.
pub fn solve_in_place(n: usize, a: &mut [f64], b: &mut [f64]) -> Result<(), Singular> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    if n == 0 {
        return Ok(());
    }
    let scale = (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .fold(0.0f64, f64::max);
    let tiny = SINGULAR_PIVOT_RATIO * scale;
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Singular);
    }

    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|r| (r, a[r * n + k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(pivot_abs > tiny) {
            return Err(Singular);
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            b.swap(k, pivot_row);
        }
        let pivot = a[k * n + k];
        for r in (k + 1)..n {
            let f = a[r * n + k] / pivot;
            if f == 0.0 {
                continue;
            }
            a[r * n + k] = f;
            for c in (k + 1)..n {
                a[r * n + c] -= f * a[k * n + c];
            }
            b[r] -= f * b[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = b[k];
        for c in (k + 1)..n {
            s -= a[k * n + c] * b[c];
        }
        b[k] = s / a[k * n + k];
    }
    Ok(())
}
