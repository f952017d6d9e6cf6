//! Exact factorisation of univariate polynomials over Q.
//!
//! Pipeline: strip the power of `t`, Yun square-free decomposition, then for
//! every square-free part a classical Zassenhaus factorisation — Berlekamp
//! over a small prime, linear Hensel lifting past the Mignotte bound, and
//! subset recombination.  Degrees in this crate stay small (weighted
//! homogeneous parts of phases), so the exponential recombination corner is
//! never a concern in practice.
//!
//! Everything here is deterministic: the prime is the smallest usable one
//! and Berlekamp splitting enumerates field elements in order, so repeated
//! runs produce identical factor lists.

use super::{Rational, UniPoly};
use num::{BigInt, One, Signed, Zero};

/// Errors from [`factor_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// Factors `p` over Q as `unit * prod factor_i^{mult_i}` with the factors
/// monic, irreducible and sorted by degree then coefficients.
pub fn factor_rational(p: &UniPoly) -> Result<(Rational, Vec<(UniPoly, u32)>), FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let unit = p.leading().unwrap().clone();
    let monic = p.monic();
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();

    // Strip the root at zero first so every later part has a nonzero
    // constant term (which the recombination prefilter relies on).
    let v = monic.valuation().unwrap();
    let mut rest = UniPoly::new(monic.coeffs()[v..].to_vec());
    if v > 0 {
        factors.push((UniPoly::from_i64(&[0, 1]), v as u32));
    }
    if rest.degree() == Some(0) {
        rest = UniPoly::constant(Rational::one());
    }

    for (part, mult) in yun_squarefree(&rest) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| compare_factors(&a.0, &b.0));
    Ok((unit, factors))
}

fn compare_factors(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for k in (0..a.coeffs().len()).rev() {
                let c = a.coeff(k).cmp(&b.coeff(k));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// Yun's square-free decomposition of a monic polynomial:
/// returns `[(g_i, i)]` with `f = prod g_i^i`, the `g_i` monic, square-free
/// and pairwise coprime (trivial `g_i` omitted).
pub fn yun_squarefree(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let (mut c, r) = f.div_rem(&g);
    debug_assert!(r.is_zero());
    let (fp_over_g, r2) = df.div_rem(&g);
    debug_assert!(r2.is_zero());
    let mut d = fp_over_g.sub(&c.derivative());
    let mut i = 1u32;
    while c.degree().map_or(false, |deg| deg > 0) {
        let p = c.gcd(&d);
        let (c_next, r3) = c.div_rem(&p);
        debug_assert!(r3.is_zero());
        let (d_over, r4) = d.div_rem(&p);
        debug_assert!(r4.is_zero());
        c = c_next;
        d = d_over.sub(&c.derivative());
        if p.degree().map_or(false, |deg| deg > 0) {
            out.push((p.monic(), i));
        }
        i += 1;
    }
    out
}

/// Factors a monic square-free rational polynomial into monic irreducibles.
fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![p.monic()],
        Some(d) => d,
    };
    // Clear denominators to a primitive integer polynomial.
    let f = clear_denominators(p);
    // Monic integer transform: g(x) = lc^{n-1} f(x/lc).
    let lc = f[deg].clone();
    let g = monic_transform(&f, &lc);
    let factors_g = factor_monic_squarefree_int(&g);
    // Map back: h(x) -> primitive part of h(lc x), then monic over Q.
    factors_g
        .iter()
        .map(|h| {
            let scaled = scale_argument(h, &lc);
            let prim = primitive_part(&scaled);
            int_to_unipoly(&prim).monic()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense little-endian Vec<BigInt>)
// ---------------------------------------------------------------------------

type IPoly = Vec<BigInt>;

fn itrim(mut p: IPoly) -> IPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn ideg(p: &IPoly) -> usize {
    p.len().saturating_sub(1)
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Divides by a monic divisor; returns `(quotient, remainder)` over Z.
fn idiv_monic(p: &IPoly, d: &IPoly) -> (IPoly, IPoly) {
    let dd = ideg(d);
    debug_assert!(d.last().map_or(false, |c| c.is_one()));
    let mut rem = p.clone();
    if rem.len() <= dd {
        return (Vec::new(), itrim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if !c.is_zero() {
            quot[k - dd] = c.clone();
            for j in 0..=dd {
                let v = &c * &d[j];
                rem[k - dd + j] -= v;
            }
        }
    }
    (itrim(quot), itrim(rem))
}

fn clear_denominators(p: &UniPoly) -> IPoly {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        let d = c.denom();
        lcm = &lcm / num::Integer::gcd(&lcm, d) * d;
    }
    let ip: IPoly = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(&itrim(ip))
}

fn content(p: &IPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = num::Integer::gcd(&g, c);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn primitive_part(p: &IPoly) -> IPoly {
    let mut g = content(p);
    if let Some(l) = p.last() {
        if l.is_negative() {
            g = -g;
        }
    }
    p.iter().map(|c| c / &g).collect()
}

/// `g(x) = lc^{n-1} f(x / lc)`, i.e. coefficient `k` becomes
/// `f_k * lc^{n-1-k}`; monic whenever `lc` is the leading coefficient of `f`.
fn monic_transform(f: &IPoly, lc: &BigInt) -> IPoly {
    let n = ideg(f);
    let mut out = Vec::with_capacity(f.len());
    for (k, c) in f.iter().enumerate() {
        if k == n {
            out.push(BigInt::one());
        } else {
            out.push(c * lc.pow((n - 1 - k) as u32));
        }
    }
    itrim(out)
}

/// `h(lc * x)` for integer `h`.
fn scale_argument(h: &IPoly, lc: &BigInt) -> IPoly {
    let mut pow = BigInt::one();
    let mut out = Vec::with_capacity(h.len());
    for c in h {
        out.push(c * &pow);
        pow *= lc;
    }
    itrim(out)
}

fn int_to_unipoly(p: &IPoly) -> UniPoly {
    UniPoly::new(p.iter().map(|c| Rational::from(c.clone())).collect())
}

fn max_abs_coeff(p: &IPoly) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

// ---------------------------------------------------------------------------
// F_p arithmetic (small prime, u64 coefficients)
// ---------------------------------------------------------------------------

type FpPoly = Vec<u64>;

fn fp_trim(mut p: FpPoly) -> FpPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn fp_mulc(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulc(acc, base, p);
        }
        base = fp_mulc(base, base, p);
        e >>= 1;
    }
    acc
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (k, item) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *item = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + fp_mulc(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_rem(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    fp_divmod(a, m, p).1
}

fn fp_divmod(a: &FpPoly, d: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let dd = d.len() - 1;
    let inv_lead = fp_inv(*d.last().unwrap(), p);
    let mut rem = a.clone();
    if rem.len() <= dd {
        return (Vec::new(), fp_trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = fp_mulc(rem[k], inv_lead, p);
        if c != 0 {
            quot[k - dd] = c;
            for j in 0..=dd {
                let v = fp_mulc(c, d[j], p);
                rem[k - dd + j] = (rem[k - dd + j] + p - v) % p;
            }
        }
    }
    (fp_trim(quot), fp_trim(rem))
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|&c| fp_mulc(c, inv, p)).collect()
        }
    }
}

fn fp_deriv(a: &FpPoly, p: u64) -> FpPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| fp_mulc(c, (k as u64) % p, p))
            .collect(),
    )
}

/// Extended Euclid over F_p: returns `(s, t)` with `s a + t b = 1`;
/// requires `gcd(a, b) = 1`.
fn fp_eea(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divmod(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
    let inv = fp_inv(r0[0], p);
    let s = fp_trim(s0.iter().map(|&c| fp_mulc(c, inv, p)).collect());
    let t = fp_trim(t0.iter().map(|&c| fp_mulc(c, inv, p)).collect());
    (s, t)
}

fn int_to_fp(f: &IPoly, p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    fp_trim(
        f.iter()
            .map(|c| {
                let m = ((c % &bp) + &bp) % &bp;
                use num::ToPrimitive;
                m.to_u64().unwrap()
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Berlekamp factorisation of a monic square-free polynomial over F_p
// ---------------------------------------------------------------------------

fn berlekamp(g: &FpPoly, p: u64) -> Vec<FpPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![fp_monic(g, p)];
    }
    // Frobenius matrix: row i = x^{p i} mod g.
    let xp = fp_powmod_x(p, g, p);
    let mut rows: Vec<FpPoly> = Vec::with_capacity(n);
    let mut cur = vec![1u64]; // x^0
    for _ in 0..n {
        rows.push(cur.clone());
        cur = fp_rem(&fp_mul(&cur, &xp, p), g, p);
    }
    // Nullspace of (Q - I)^T over F_p, where Q[i][j] = coeff_j(rows[i]).
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            let mut v = row.get(j).copied().unwrap_or(0);
            if i == j {
                v = (v + p - 1) % p;
            }
            // transpose: column i, row j
            mat[j][i] = v;
        }
    }
    let basis = fp_nullspace(mat, p);
    let r = basis.len();
    let mut factors: Vec<FpPoly> = vec![fp_monic(g, p)];
    if r == 1 {
        return factors;
    }
    'outer: for v in basis.iter() {
        let vp = fp_trim(v.clone());
        if vp.len() <= 1 {
            continue; // constant vector splits nothing
        }
        let mut next: Vec<FpPoly> = Vec::new();
        for u in factors.drain(..) {
            if u.len() - 1 <= 1 {
                next.push(u);
                continue;
            }
            let mut pieces = vec![u];
            for c in 0..p {
                if pieces.iter().all(|q| q.len() - 1 <= 1) {
                    break;
                }
                let mut split_pieces = Vec::new();
                for q in pieces.drain(..) {
                    if q.len() - 1 <= 1 {
                        split_pieces.push(q);
                        continue;
                    }
                    let shifted = fp_sub(&vp, &vec![c], p);
                    let w = fp_gcd(&q, &shifted, p);
                    if !w.is_empty() && w.len() > 1 && w.len() < q.len() {
                        let (quot, rem) = fp_divmod(&q, &w, p);
                        debug_assert!(rem.is_empty());
                        split_pieces.push(fp_monic(&w, p));
                        split_pieces.push(fp_monic(&quot, p));
                    } else {
                        split_pieces.push(q);
                    }
                }
                pieces = split_pieces;
            }
            next.extend(pieces);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    factors.sort();
    factors
}

/// `x^e mod g` over F_p by square and multiply.
fn fp_powmod_x(e: u64, g: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut base = fp_rem(&vec![0, 1], g, p);
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &base, p), g, p);
        }
        base = fp_rem(&fp_mul(&base, &base, p), g, p);
        k >>= 1;
    }
    acc
}

/// Nullspace basis of an `n x n` matrix over F_p.
fn fp_nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = fp_inv(m[row][col], p);
        for j in 0..n {
            m[row][j] = fp_mulc(m[row][j], inv, p);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for j in 0..n {
                    let v = fp_mulc(f, m[row][j], p);
                    m[r][j] = (m[r][j] + p - v) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    let pivots: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot var = -sum(free columns)
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting and recombination
// ---------------------------------------------------------------------------

struct LiftCtx {
    p: u64,
    modulus: BigInt,
}

fn mod_reduce(f: &IPoly, m: &BigInt) -> IPoly {
    itrim(f.iter().map(|c| ((c % m) + m) % m).collect())
}

fn mod_mul(a: &IPoly, b: &IPoly, m: &BigInt) -> IPoly {
    mod_reduce(&imul(a, b), m)
}

/// Remainder modulo a monic divisor, coefficients reduced mod `m`.
fn mod_rem_monic(a: &IPoly, d: &IPoly, m: &BigInt) -> IPoly {
    let dd = ideg(d);
    let mut rem = mod_reduce(a, m);
    while rem.len() > dd {
        let k = rem.len() - 1;
        let c = rem[k].clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let v = (&c * &d[j]) % m;
                rem[k - dd + j] = ((&rem[k - dd + j] - v) % m + m) % m;
            }
        }
        rem = itrim(rem);
        if rem.len() <= dd {
            break;
        }
    }
    itrim(rem)
}

/// Lifts the monic coprime factorisation `f = a * b (mod p)` to `mod target`,
/// returning the lifted pair.
fn hensel_pair(ctx: &LiftCtx, f: &IPoly, a0: &FpPoly, b0: &FpPoly) -> (IPoly, IPoly) {
    let p = ctx.p;
    let pbig = BigInt::from(p);
    let (s, t) = fp_eea(a0, b0, p);
    let fp_to_int = |q: &FpPoly| -> IPoly { itrim(q.iter().map(|&c| BigInt::from(c)).collect()) };
    let mut a = fp_to_int(a0);
    let mut b = fp_to_int(b0);
    let si = fp_to_int(&s);
    let ti = fp_to_int(&t);
    let mut pj = pbig.clone();
    while pj < ctx.modulus {
        let next = &pj * &pbig;
        // error e = (f - a b) / p^j  (exact by construction)
        let prod = imul(&a, &b);
        let width = f.len().max(prod.len());
        let mut e: IPoly = Vec::with_capacity(width);
        for k in 0..width {
            let fk = f.get(k).cloned().unwrap_or_else(BigInt::zero);
            let pk = prod.get(k).cloned().unwrap_or_else(BigInt::zero);
            e.push(fk - pk);
        }
        let e: IPoly = itrim(e.iter().map(|c| c / &pj).collect());
        let e_mod = mod_reduce(&e, &pbig);
        // delta_a = t e mod a, delta_b = s e mod b  (all mod p)
        let da = mod_rem_monic(&mod_mul(&ti, &e_mod, &pbig), &a_monic_head(&a), &pbig);
        let db = mod_rem_monic(&mod_mul(&si, &e_mod, &pbig), &a_monic_head(&b), &pbig);
        a = add_scaled(&a, &da, &pj, &next);
        b = add_scaled(&b, &db, &pj, &next);
        pj = next;
    }
    (mod_reduce(&a, &ctx.modulus), mod_reduce(&b, &ctx.modulus))
}

/// The factor with its (known monic) head coefficient normalised to exactly 1.
fn a_monic_head(a: &IPoly) -> IPoly {
    let mut out = a.clone();
    let n = out.len();
    out[n - 1] = BigInt::one();
    out
}

fn add_scaled(a: &IPoly, delta: &IPoly, scale: &BigInt, modulus: &BigInt) -> IPoly {
    let n = a.len().max(delta.len());
    let mut out = vec![BigInt::zero(); n];
    for (k, item) in out.iter_mut().enumerate() {
        let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
        let d = delta.get(k).cloned().unwrap_or_else(BigInt::zero);
        *item = (((x + d * scale) % modulus) + modulus) % modulus;
    }
    itrim(out)
}

/// Recursively lifts all modular factors of monic `f` to `ctx.modulus`.
fn hensel_tree(ctx: &LiftCtx, f: &IPoly, parts: &[FpPoly]) -> Vec<IPoly> {
    if parts.len() == 1 {
        return vec![mod_reduce(f, &ctx.modulus)];
    }
    let mid = parts.len() / 2;
    let (lo, hi) = parts.split_at(mid);
    let p = ctx.p;
    let mut a0 = vec![1u64];
    for q in lo {
        a0 = fp_mul(&a0, q, p);
    }
    let mut b0 = vec![1u64];
    for q in hi {
        b0 = fp_mul(&b0, q, p);
    }
    let (a, b) = hensel_pair(ctx, f, &a0, &b0);
    let mut out = hensel_tree(ctx, &a, lo);
    out.extend(hensel_tree(ctx, &b, hi));
    out
}

/// Centred representative in `(-m/2, m/2]`.
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let half = m / 2;
    let r = ((c % m) + m) % m;
    if r > half {
        r - m
    } else {
        r
    }
}

fn factor_monic_squarefree_int(g: &IPoly) -> Vec<IPoly> {
    let n = ideg(g);
    if n <= 1 {
        return vec![g.clone()];
    }
    // Smallest odd prime keeping g square-free mod p.
    let p = choose_prime(g);
    let gp = int_to_fp(g, p);
    let modular = berlekamp(&gp, p);
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // Mignotte-style bound on factor coefficients of a monic g.
    let norm: BigInt = max_abs_coeff(g) * BigInt::from(n as u64 + 1);
    let bound: BigInt = (BigInt::one() << (n + 2)) * norm;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus = &modulus * BigInt::from(p);
    }
    let ctx = LiftCtx { p, modulus: modulus.clone() };
    let lifted = hensel_tree(&ctx, &mod_reduce(g, &modulus), &modular);

    // Subset recombination.
    let mut remaining: Vec<IPoly> = lifted;
    let mut target = g.clone();
    let mut out: Vec<IPoly> = Vec::new();
    let mut card = 1usize;
    while remaining.len() > 0 && card <= remaining.len() {
        if 2 * card > remaining.len() {
            break;
        }
        let mut used = false;
        for combo in combinations(remaining.len(), card) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = mod_mul(&prod, &remaining[i], &modulus);
            }
            let cand: IPoly = itrim(prod.iter().map(|c| symmetric(c, &modulus)).collect());
            // cheap prefilter: candidate constant must divide target constant
            if let (Some(c0), Some(t0)) = (cand.first(), target.first()) {
                if !t0.is_zero() && !c0.is_zero() && !(t0 % c0).is_zero() {
                    continue;
                }
            }
            let (quot, rem) = idiv_monic(&target, &cand);
            if rem.is_empty() {
                out.push(cand);
                target = quot;
                let mut keep = Vec::new();
                for (i, f) in remaining.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(f);
                    }
                }
                remaining = keep;
                used = true;
                break;
            }
        }
        if !used {
            card += 1;
        }
    }
    if ideg(&target) >= 1 {
        out.push(target);
    }
    out.sort_by(|a, b| (ideg(a), a.clone()).cmp(&(ideg(b), b.clone())));
    out
}

fn choose_prime(g: &IPoly) -> u64 {
    'next: for p in primes_from(3) {
        let gp = int_to_fp(g, p);
        if gp.len() != g.len() {
            continue; // should not happen for monic g, but stay safe
        }
        let d = fp_deriv(&gp, p);
        if d.is_empty() {
            continue 'next;
        }
        let gc = fp_gcd(&gp, &d, p);
        if gc.len() == 1 {
            return p;
        }
    }
    unreachable!("square-free integer polynomial has infinitely many good primes")
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..100_000).filter(|&n| {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
