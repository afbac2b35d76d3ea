//! Characteristic polynomials and exact eigenvalue discovery.
//!
//! Over Q the characteristic polynomial comes from the Faddeev-LeVerrier
//! recurrence (all divisions are exact). Over GF(p) the division-free
//! Samuelson-Berkowitz expansion is used instead, since LeVerrier divides by
//! 1..m and those integers need not be invertible mod p.
//!
//! Rational eigenvalues are exact: the matrix is scaled to an integer matrix,
//! whose characteristic polynomial is monic over Z, so every rational root is
//! an integer dividing the constant term. Divisors are enumerated from a full
//! integer factorization (trial division plus Pollard rho).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// Coefficients of det(lambda I - A), ascending by power; monic, length m+1.
pub fn char_poly(a: &Matrix) -> Vec<Scalar> {
    assert!(
        a.is_square(),
        "characteristic polynomial of a square matrix"
    );
    match a.field() {
        Field::Q => char_poly_leverrier(a),
        Field::Gf(_) => char_poly_berkowitz(a),
    }
}

fn char_poly_leverrier(a: &Matrix) -> Vec<Scalar> {
    let m = a.rows();
    let field = a.field();
    let mut coeffs = vec![field.zero(); m + 1];
    coeffs[m] = field.one();
    if m == 0 {
        return coeffs;
    }
    let mut work = a.clone();
    let mut trace = work.trace();
    coeffs[m - 1] = -&trace;
    for k in 2..=m {
        // work <- A (work + c_{m-k+1} I)
        let shifted = work
            .add(&Matrix::identity(field, m).scale(&coeffs[m - k + 1]))
            .expect("same shape");
        work = a.mul(&shifted).expect("square product");
        trace = work.trace();
        coeffs[m - k] = &(-&trace) / &field.from_i64(k as i64);
    }
    coeffs
}

/// Samuelson-Berkowitz: extend the characteristic polynomial of each leading
/// principal submatrix by one Toeplitz product. Division-free.
fn char_poly_berkowitz(a: &Matrix) -> Vec<Scalar> {
    let m = a.rows();
    let field = a.field();
    if m == 0 {
        return vec![field.one()];
    }
    // Descending coefficients, starting from the 1x1 principal block.
    let mut desc = vec![field.one(), -a.get(0, 0)];
    for i in 1..m {
        // s_j = R M^j C for the principal block M, new row R and column C.
        let mut cur: Vec<Scalar> = (0..i).map(|r| a.get(r, i).clone()).collect();
        let mut moments = Vec::with_capacity(i);
        for _ in 0..i {
            let mut s = field.zero();
            for (c, x) in cur.iter().enumerate() {
                if !x.is_zero() {
                    s = &s + &(a.get(i, c) * x);
                }
            }
            moments.push(s);
            let next: Vec<Scalar> = (0..i)
                .map(|r| {
                    let mut acc = field.zero();
                    for (c, x) in cur.iter().enumerate() {
                        if !x.is_zero() {
                            acc = &acc + &(a.get(r, c) * x);
                        }
                    }
                    acc
                })
                .collect();
            cur = next;
        }
        let mut toeplitz_col = Vec::with_capacity(i + 2);
        toeplitz_col.push(field.one());
        toeplitz_col.push(-a.get(i, i));
        for s in &moments {
            toeplitz_col.push(-s);
        }
        let mut next = vec![field.zero(); i + 2];
        for (r, out) in next.iter_mut().enumerate() {
            for (c, v) in desc.iter().enumerate() {
                if c <= r {
                    *out = &*out + &(&toeplitz_col[r - c] * v);
                }
            }
        }
        desc = next;
    }
    desc.reverse();
    desc
}

/// Evaluate an ascending-coefficient polynomial.
pub fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.field();
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// The exact set of eigenvalues lying in the coefficient field, sorted.
///
/// Over Q these are the rational roots of the characteristic polynomial;
/// irrational or complex eigenvalues are not reported (they show up as the
/// residual nonlinear factor). Over GF(p) the whole field is scanned.
pub fn rational_eigenvalues(a: &Matrix) -> Vec<Scalar> {
    assert!(a.is_square(), "eigenvalues of a square matrix");
    match a.field() {
        Field::Q => rational_eigenvalues_q(a),
        Field::Gf(p) => {
            let m = a.rows();
            let field = a.field();
            let mut out = Vec::new();
            for v in 0..p {
                let lam = Scalar::Gf {
                    value: v,
                    modulus: p,
                };
                let shifted = a
                    .sub(&Matrix::identity(field, m).scale(&lam))
                    .expect("same shape");
                if shifted.rank() < m {
                    out.push(lam);
                }
            }
            out
        }
    }
}

fn rational_eigenvalues_q(a: &Matrix) -> Vec<Scalar> {
    let m = a.rows();
    if m == 0 {
        return Vec::new();
    }
    // Scale to an integer matrix: eig(d A) = d eig(A), and the characteristic
    // polynomial of an integer matrix is monic over Z, so all rational roots
    // are integers dividing the constant term.
    let mut denom_lcm = BigInt::one();
    for i in 0..m {
        for j in 0..m {
            let r = a.get(i, j).as_rational().expect("Q matrix");
            denom_lcm = denom_lcm.lcm(r.denom());
        }
    }
    let scale = Scalar::Q(BigRational::from_integer(denom_lcm.clone()));
    let scaled = a.scale(&scale);
    let coeffs: Vec<BigInt> = char_poly(&scaled)
        .into_iter()
        .map(|c| {
            let r = c.as_rational().expect("Q coefficients").clone();
            debug_assert!(r.denom().is_one(), "integer matrix has integer char poly");
            r.to_integer()
        })
        .collect();

    // Strip the power of lambda: zero is a root iff the valuation is positive.
    let valuation = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("monic polynomial is nonzero");
    let reduced = &coeffs[valuation..];

    let mut int_roots: Vec<BigInt> = Vec::new();
    if valuation > 0 {
        int_roots.push(BigInt::zero());
    }
    let constant = reduced[0].magnitude().clone();
    if !constant.is_zero() {
        for d in divisors(&constant) {
            let cand = BigInt::from(d.clone());
            for root in [cand.clone(), -cand] {
                if eval_int_poly(reduced, &root).is_zero() {
                    int_roots.push(root);
                }
            }
        }
    }
    let mut out: Vec<Scalar> = int_roots
        .into_iter()
        .map(|r| Scalar::Q(BigRational::new(r, denom_lcm.clone())))
        .collect();
    out.sort_by(|x, y| x.as_rational().unwrap().cmp(y.as_rational().unwrap()));
    out.dedup();
    out
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All positive divisors of n > 0, unsorted.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let factors = factorize(n.clone());
    let mut out = vec![BigUint::one()];
    for (p, e) in factors {
        let base_len = out.len();
        let mut power = BigUint::one();
        for _ in 0..e {
            power *= &p;
            for i in 0..base_len {
                out.push(&out[i] * &power);
            }
        }
    }
    out
}

fn factorize(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: std::collections::BTreeMap<BigUint, u32> = Default::default();
    if n.is_one() {
        return Vec::new();
    }
    for p in 2u64..=4096 {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            *factors.entry(pb.clone()).or_insert(0) += 1;
            n /= &pb;
        }
    }
    if !n.is_one() {
        let mut stack = vec![n];
        while let Some(c) = stack.pop() {
            if is_probable_prime(&c) {
                *factors.entry(c).or_insert(0) += 1;
            } else {
                let d = pollard_rho(&c);
                stack.push(&c / &d);
                stack.push(d);
            }
        }
    }
    factors.into_iter().collect()
}

/// Miller-Rabin. Deterministic for anything below 3.3e24 with these bases;
/// the additional fixed bases make a false positive astronomically unlikely
/// for larger inputs.
fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return crate::scalar::is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let bases: Vec<u64> = vec![
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107,
    ];
    'base: for b in bases {
        let b = BigUint::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Brent's cycle detection; n must be composite and odd.
fn pollard_rho(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut addend = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d.is_one() {
            x = (&x * &x + &addend) % n;
            y = (&y * &y + &addend) % n;
            y = (&y * &y + &addend) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        addend += 1u32;
    }
}
