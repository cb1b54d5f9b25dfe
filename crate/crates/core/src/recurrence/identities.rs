//! Exact integer checks of the matrix identities behind the `k = 8`
//! reduction rules and the sparse recurrences.

use serde::Serialize;

use crate::chain::{initial_vector, selector, squaring_matrix, transfer_matrix, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(IdentityCheck {
            name: name.into(),
            passed,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }
}

struct K8 {
    u: IntMatrix,
    u0: IntMatrix,
    m: IntMatrix,
    w: IntMatrix,
}

fn k8() -> K8 {
    K8 {
        u: IntMatrix::row(&selector(8).expect("k=8 has a selector")),
        u0: IntMatrix::column(&initial_vector(8).expect("k=8 has an initial vector")),
        m: transfer_matrix(8)
            .expect("k=8 has a transfer matrix")
            .matrix,
        w: squaring_matrix().matrix,
    }
}

/// The identities relating `U`, `Ũ0`, `M` and `W` for `k = 8`, including
/// the minimal polynomial `X^4 - 9X^3 + 8X^2` of `WM`.
pub fn wm_identity_suite() -> IdentityReport {
    let K8 { u, u0, m, w } = k8();
    let mut report = IdentityReport::default();

    let m2 = m.pow(2);
    let m3 = m.pow(3);
    let um = &u * &m;

    report.push("U Ũ0 = 1", (&u * &u0).entries() == [1]);
    report.push("U W = U", &u * &w == u);
    report.push("U M W = 8U", &um * &w == u.scale(8));
    report.push(
        "U M^2 W = U M + 40U",
        &(&u * &m2) * &w == &um + &u.scale(40),
    );
    report.push(
        "U M^3 - 7 U M^2 + 2 U M + 24 U = 0",
        (&u * &m.eval_poly(&[24, 2, -7, 1])).is_zero(),
    );
    report.push("W^2 = Ũ0 U", w.pow(2) == &u0 * &u);

    let wm = &w * &m;
    // (WM)^2 - 9 WM + 8I
    let q = wm.eval_poly(&[8, -9, 1]);
    report.push(
        "X^4 - 9X^3 + 8X^2 annihilates WM",
        wm.eval_poly(&[0, 0, 8, -9, 1]).is_zero(),
    );
    for (name, coeffs) in [
        ("X^3 - 9X^2 + 8X", [0, 8, -9, 1]),
        ("X^3 - X^2", [0, 0, -1, 1]),
        ("X^3 - 8X^2", [0, 0, -8, 1]),
    ] {
        report.push(
            format!("{name} does not annihilate WM"),
            !wm.eval_poly(&coeffs).is_zero(),
        );
    }
    report.push(
        "U W M ((WM)^2 - 9WM + 8I) = 0",
        (&(&u * &wm) * &q).is_zero(),
    );
    report.push("U M ((WM)^2 - 9WM + 8I) = 0", (&um * &q).is_zero());
    report.push(
        "U M^2 ((WM)^2 - 9WM + 8I) = 0",
        (&(&u * &m2) * &q).is_zero(),
    );
    let um3q = &(&u * &m3) * &q;
    report.push("U M^3 ((WM)^2 - 9WM + 8I) != 0", !um3q.is_zero());
    report.push("U M^3 ((WM)^2 - 9WM + 8I) Ũ0 = 0", (&um3q * &u0).is_zero());
    report
}

/// `U p(M) = 0` for the characteristic recurrence polynomial `p` of each
/// `k` in `4..=8`, and the rows `U M^i` for `k = 8`.
pub fn annihilation_suite() -> IdentityReport {
    let mut report = IdentityReport::default();
    let cases: [(u32, &str, &[i64]); 5] = [
        (4, "U (M^2 - 2M - 4I) = 0", &[-4, -2, 1]),
        (5, "U (M^2 - 3M - 6I) = 0", &[-6, -3, 1]),
        (6, "U (M^2 - 5M) = 0", &[0, -5, 1]),
        (7, "U (M^2 - 6M - I) = 0", &[-1, -6, 1]),
        (8, "U (M^3 - 7M^2 + 2M + 24I) = 0", &[24, 2, -7, 1]),
    ];
    for (k, name, coeffs) in cases {
        let u = IntMatrix::row(&selector(k).expect("k in 4..=8"));
        let m = transfer_matrix(k).expect("k in 4..=8").matrix;
        report.push(
            format!("k={k}: {name}"),
            (&u * &m.eval_poly(coeffs)).is_zero(),
        );
    }

    let K8 { u, m, .. } = k8();
    let rows: [(u32, [i64; 5]); 3] = [
        (1, [4, 4, 8, 0, 8]),
        (2, [24, 28, 44, 4, 48]),
        (3, [136, 188, 268, 28, 296]),
    ];
    for (e, row) in rows {
        let got = &u * &m.pow(e);
        report.push(format!("k=8: U M^{e} = {row:?}"), got.entries() == row);
    }
    report
}
