//! Brute-force reference implementations compared against the library.
//!
//! Cochains are evaluated as alternating multilinear maps on arbitrary
//! argument lists, shuffles are found by filtering all permutations, and the
//! Maurer-Cartan residual over `K[t]/(t^N)` is expanded by hand from the
//! closed degree-one formulas.

use std::collections::BTreeMap;
use std::sync::Arc;

use liepair::coeff::{int, Scalar};
use liepair::liealg::{derivation_space, Derivation};
use liepair::linalg::Matrix;
use liepair::mc::{mc_residual, GaugeMode, GaugeParameter, MCElement};
use liepair::omega::{d_ce, ext_b1, ext_b2, ext_b2_der, ext_b3, OmegaElement};
use liepair::sample::Sampler;
use liepair::{catalog, cohomology, ArtinAlgebra, LiePair};
use num_traits::{One, Zero};

type Vector = Vec<Scalar>;

fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

/// Sign of a permutation by counting inversions.
fn sign(perm: &[usize]) -> Scalar {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// `(a, b)`-shuffles: permutations increasing on the first `a` and the last
/// `b` positions.
fn shuffles(a: usize, b: usize) -> Vec<Vec<usize>> {
    permutations(a + b)
        .into_iter()
        .filter(|p| p[..a].windows(2).all(|w| w[0] < w[1]) && p[a..].windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// A cochain as a map from increasing basis tuples to `B`-vectors.
struct Alternating {
    q: usize,
    values: BTreeMap<Vec<usize>, Vector>,
}

impl Alternating {
    fn of(x: &OmegaElement) -> Self {
        let q = x.pair().q();
        let mut values = BTreeMap::new();
        for (idx, b, c) in x.entries() {
            values.entry(idx).or_insert_with(|| zeros(q))[b] = c;
        }
        Self { q, values }
    }

    /// Value on arbitrary subalgebra vectors, by multilinear expansion.
    fn eval(&self, args: &[Vector]) -> Vector {
        let mut out = zeros(self.q);
        for (idx, v) in &self.values {
            // sum over assignments of the tuple's indices to the arguments
            for perm in permutations(idx.len()) {
                let mut c = sign(&perm);
                for (slot, &k) in perm.iter().enumerate() {
                    c *= &args[slot][idx[k]];
                }
                if !c.is_zero() {
                    axpy(&mut out, &c, v);
                }
            }
        }
        out
    }
}

fn unit(r: usize, i: usize) -> Vector {
    let mut v = zeros(r);
    v[i] = Scalar::one();
    v
}

fn bracket(p: &LiePair, u: &[Scalar], v: &[Scalar]) -> Vector {
    p.lie().bracket(u, v)
}

fn pr_a(p: &LiePair, v: &[Scalar]) -> Vector {
    v[..p.r()].to_vec()
}

fn pr_b(p: &LiePair, v: &[Scalar]) -> Vector {
    v[p.r()..].to_vec()
}

fn include(p: &LiePair, a: &[Scalar]) -> Vector {
    let mut v = a.to_vec();
    v.resize(p.n(), Scalar::zero());
    v
}

fn lift(p: &LiePair, b: &[Scalar]) -> Vector {
    let mut v = zeros(p.r());
    v.extend_from_slice(b);
    v
}

fn increasing(r: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in increasing(r, k - 1) {
        let start = t.last().map_or(0, |&x| x + 1);
        for i in start..r {
            let mut u = t.clone();
            u.push(i);
            out.push(u);
        }
    }
    out
}

/// Builds a cochain from a function on increasing tuples.
fn tabulate(p: &Arc<LiePair>, k: usize, f: impl Fn(&[usize]) -> Vector) -> OmegaElement {
    let mut entries = Vec::new();
    for t in increasing(p.r(), k) {
        for (b, c) in f(&t).into_iter().enumerate() {
            if !c.is_zero() {
                entries.push((t.clone(), b, c));
            }
        }
    }
    OmegaElement::from_entries(p, k, &entries).unwrap()
}

/// Chevalley-Eilenberg differential with the Bott connection.
fn d_oracle(x: &OmegaElement) -> OmegaElement {
    let p = x.pair().clone();
    let k = x.degree();
    let f = Alternating::of(x);
    tabulate(&p, k + 1, |t| {
        let args: Vec<Vector> = t.iter().map(|&i| unit(p.r(), i)).collect();
        let mut out = zeros(p.q());
        for i in 0..=k {
            let rest: Vec<Vector> = args.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            let val = f.eval(&rest);
            let conn = pr_b(&p, &bracket(&p, &include(&p, &args[i]), &lift(&p, &val)));
            let s = if i % 2 == 0 { int(1) } else { int(-1) };
            axpy(&mut out, &s, &conn);
            for j in i + 1..=k {
                let br = pr_a(&p, &bracket(&p, &include(&p, &args[i]), &include(&p, &args[j])));
                let mut rest = vec![br];
                rest.extend(args.iter().enumerate().filter(|(l, _)| *l != i && *l != j).map(|(_, v)| v.clone()));
                let s = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                axpy(&mut out, &s, &f.eval(&rest));
            }
        }
        out
    })
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vector {
    m.mul_vec(v)
}

/// `[delta, X](a..) = pr_B delta j X(a..) - sum X(.., pr_A delta a_i, ..)`.
fn b2_oracle(delta: &Derivation, x: &OmegaElement) -> OmegaElement {
    let p = x.pair().clone();
    let k = x.degree();
    let f = Alternating::of(x);
    let d = delta.matrix();
    tabulate(&p, k, |t| {
        let args: Vec<Vector> = t.iter().map(|&i| unit(p.r(), i)).collect();
        let mut out = pr_b(&p, &apply(d, &lift(&p, &f.eval(&args))));
        for i in 0..k {
            let mut moved = args.clone();
            moved[i] = pr_a(&p, &apply(d, &include(&p, &args[i])));
            axpy(&mut out, &int(-1), &f.eval(&moved));
        }
        out
    })
}

/// Ternary bracket from the shuffle formula, shuffles found by brute force.
fn b3_oracle(delta: &Derivation, x: &OmegaElement, y: &OmegaElement) -> OmegaElement {
    let p = x.pair().clone();
    let (dx, dy) = (x.degree(), y.degree());
    let m = dx + dy - 1;
    let (fx, fy) = (Alternating::of(x), Alternating::of(y));
    let d = delta.matrix();
    let lifted = |v: &Vector| pr_a(&p, &apply(d, &lift(&p, v)));
    let first = if dx % 2 == 1 { int(1) } else { int(-1) };
    tabulate(&p, m, |t| {
        let args: Vec<Vector> = t.iter().map(|&i| unit(p.r(), i)).collect();
        let mut out = zeros(p.q());
        for s in shuffles(dx, dy - 1) {
            let head: Vec<Vector> = s[..dx].iter().map(|&i| args[i].clone()).collect();
            let mut rest = vec![lifted(&fx.eval(&head))];
            rest.extend(s[dx..].iter().map(|&i| args[i].clone()));
            axpy(&mut out, &(&first * sign(&s)), &fy.eval(&rest));
        }
        for s in shuffles(dx - 1, dy) {
            let tail: Vec<Vector> = s[dx - 1..].iter().map(|&i| args[i].clone()).collect();
            let mut rest = vec![lifted(&fy.eval(&tail))];
            rest.extend(s[..dx - 1].iter().map(|&i| args[i].clone()));
            axpy(&mut out, &sign(&s), &fx.eval(&rest));
        }
        out
    })
}

#[test]
fn differential_matches_reference() {
    let mut s = Sampler::new(101);
    for entry in catalog::entries() {
        for k in 0..=entry.pair.r() {
            for _ in 0..3 {
                let x = s.omega(&entry.pair, k);
                assert_eq!(d_ce(&x), d_oracle(&x), "{} degree {k}", entry.name);
            }
        }
    }
}

#[test]
fn binary_bracket_matches_reference() {
    let mut s = Sampler::new(102);
    for entry in catalog::entries() {
        let p = &entry.pair;
        for d in derivation_space(p.lie()) {
            let k = 1 + s.index(p.r());
            let x = s.omega(p, k);
            assert_eq!(ext_b2(&d, &x), b2_oracle(&d, &x), "{} degree {k}", entry.name);
        }
    }
}

#[test]
fn ternary_bracket_matches_reference() {
    let mut s = Sampler::new(103);
    for entry in catalog::entries() {
        let p = &entry.pair;
        let ders = derivation_space(p.lie());
        for dx in 1..=p.r() {
            for dy in 1..=p.r() + 1 - dx {
                for _ in 0..2 {
                    let d = &ders[s.index(ders.len())];
                    let (x, y) = (s.omega(p, dx), s.omega(p, dy));
                    let got = ext_b3(d, &x, &y).unwrap();
                    assert_eq!(got, b3_oracle(d, &x, &y), "{} degrees {dx}, {dy}", entry.name);
                }
            }
        }
    }
}

#[test]
fn derivation_commutator_is_matrix_commutator() {
    let mut s = Sampler::new(104);
    for entry in catalog::entries() {
        let ders = derivation_space(entry.pair.lie());
        let (a, b) = (&ders[s.index(ders.len())], &ders[s.index(ders.len())]);
        let expected = &(a.matrix() * b.matrix()) - &(b.matrix() * a.matrix());
        assert_eq!(*ext_b2_der(a, b).matrix(), expected);
    }
}

/// Derivation dimension from the Leibniz equations, solved as a linear
/// system in the `n^2` matrix entries.
fn derivation_dimension(p: &LiePair) -> usize {
    let n = p.n();
    let lie = p.lie();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for out in 0..n {
                // (D[x,y])_out - ([Dx,y])_out - ([x,Dy])_out = 0
                let mut row = zeros(n * n);
                for (k, c) in lie.structure(x, y).iter().enumerate() {
                    row[out * n + k] += c;
                }
                for k in 0..n {
                    row[k * n + x] -= &lie.structure(k, y)[out];
                    row[k * n + y] -= &lie.structure(x, k)[out];
                }
                rows.push(row);
            }
        }
    }
    n * n - Matrix::from_rows(&rows, n * n).rank()
}

#[test]
fn derivation_space_dimension() {
    for entry in catalog::entries() {
        let p = &entry.pair;
        let ders = derivation_space(p.lie());
        assert_eq!(ders.len(), derivation_dimension(p), "{}", entry.name);
    }
    let dims: Vec<usize> = ["sl2_borel", "aff1", "heis3_center", "abelian_4_2"]
        .iter()
        .map(|n| derivation_space(catalog::lookup(n).unwrap().pair.lie()).len())
        .collect();
    assert_eq!(dims, vec![3, 2, 6, 16]);
}

#[test]
fn cohomology_dimensions_from_reference_differential() {
    for entry in catalog::entries() {
        let p = &entry.pair;
        let matrix = |k: usize| -> Option<Matrix> {
            let basis = increasing(p.r(), k);
            let len = basis.len() * p.q();
            if len == 0 {
                return None;
            }
            let cols: Vec<Vector> = (0..len)
                .map(|i| {
                    let mut data = zeros(len);
                    data[i] = Scalar::one();
                    d_oracle(&OmegaElement::from_data(p, k, data).unwrap()).into_data()
                })
                .collect();
            Some(Matrix::from_columns(&cols, increasing(p.r(), k + 1).len() * p.q()))
        };
        for k in 0..=p.r() {
            let dim = increasing(p.r(), k).len() * p.q();
            let out_rank = matrix(k).map_or(0, |m| m.rank());
            let in_rank = if k == 0 { 0 } else { matrix(k - 1).map_or(0, |m| m.rank()) };
            let expected = dim - out_rank - in_rank;
            assert_eq!(cohomology::h_ce(p, k).dimension(), expected, "{} degree {k}", entry.name);
        }
    }
}

#[test]
fn fraction_free_rank_matches_row_reduction() {
    let mut s = Sampler::new(105);
    for _ in 0..60 {
        let (r, c) = (1 + s.index(6), 1 + s.index(6));
        let mut rows: Vec<Vector> = (0..r).map(|_| (0..c).map(|_| s.scalar()).collect()).collect();
        if r > 2 && s.coin(0.5) {
            // force a dependency
            let combo: Vector = rows[0].iter().zip(&rows[1]).map(|(a, b)| a - b * int(2)).collect();
            rows[r - 1] = combo;
        }
        let m = Matrix::from_rows(&rows, c);
        let (_, pivots) = m.rref();
        assert_eq!(m.rank(), pivots.len());
        let kernel = m.nullspace();
        assert_eq!(kernel.len(), c - pivots.len());
        for v in kernel {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}

/// Coefficients of `t^k` of a Maurer-Cartan residual over `K[t]/(t^N)`,
/// expanded from the closed formulas for the binary and ternary brackets
/// of degree-one elements.
fn residual_oracle(p: &Arc<LiePair>, parts: &[OmegaElement], top: usize) -> Vec<OmegaElement> {
    let fs: Vec<Alternating> = parts.iter().map(Alternating::of).collect();
    let e = |i: usize, a: usize| fs[i].eval(&[unit(p.r(), a)]);
    let j = |b: &Vector| lift(p, b);
    (0..top)
        .map(|k| {
            let mut out = if k < parts.len() { d_ce(&parts[k]) } else { OmegaElement::zero(p, 1) };
            out = out.add(&tabulate(p, 2, |t| {
                let (a1, a2) = (t[0], t[1]);
                let mut v = zeros(p.q());
                for i in 1..k {
                    let l = k - i;
                    if i >= parts.len() || l >= parts.len() {
                        continue;
                    }
                    axpy(&mut v, &int(1), &pr_b(p, &bracket(p, &j(&e(i, a1)), &j(&e(l, a2)))));
                    let u = pr_a(p, &bracket(p, &j(&e(l, a1)), &include(p, &unit(p.r(), a2))));
                    axpy(&mut v, &int(-1), &fs[i].eval(&[u]));
                    let u = pr_a(p, &bracket(p, &include(p, &unit(p.r(), a1)), &j(&e(l, a2))));
                    axpy(&mut v, &int(-1), &fs[i].eval(&[u]));
                    for i2 in 1..l {
                        let l2 = l - i2;
                        if i2 >= parts.len() || l2 >= parts.len() {
                            continue;
                        }
                        let u = pr_a(p, &bracket(p, &j(&e(i2, a1)), &j(&e(l2, a2))));
                        axpy(&mut v, &int(-1), &fs[i].eval(&[u]));
                    }
                }
                v
            }))
            .unwrap();
            out
        })
        .collect()
}

#[test]
fn maurer_cartan_residual_matches_expansion() {
    let mut s = Sampler::new(106);
    for top in [2, 3, 4] {
        let alg = ArtinAlgebra::t_power(top).unwrap();
        for entry in catalog::entries() {
            for _ in 0..3 {
                let xi = s.candidate(&entry.pair, &alg);
                let got = mc_residual(&xi);
                let expected = residual_oracle(&entry.pair, xi.components(), top);
                for k in 0..top {
                    assert_eq!(*got.component(k), expected[k], "{} t^{k} over t^{top}", entry.name);
                }
            }
        }
    }
}

#[test]
fn first_order_gauge_action_is_translation_by_unary_bracket() {
    let mut s = Sampler::new(107);
    let dual = ArtinAlgebra::dual();
    let t = catalog::scalars(&[0, 1]);
    for entry in catalog::entries() {
        let p = &entry.pair;
        let c = s.cocycle(p);
        let xi = MCElement::elementary(&c, &dual, &t).unwrap().verify().unwrap();
        let d = s.derivation(p, GaugeMode::Weak);
        let delta = GaugeParameter::elementary(p, &dual, GaugeMode::Weak, &d, &t).unwrap();
        let moved = liepair::mc::gauge_act(&delta, &xi).unwrap();
        let expected = c.sub(&ext_b1(p, &d)).unwrap();
        assert_eq!(moved.components()[1], expected, "{}", entry.name);
        // the unary bracket is -pr_B o delta restricted to the subalgebra
        let direct = tabulate(p, 1, |a| pr_b(p, &apply(d.matrix(), &include(p, &unit(p.r(), a[0])))).iter().map(|x| -x).collect());
        assert_eq!(ext_b1(p, &d), direct);
    }
}
