//! Fixed instances for the benchmarks: one catalog pair, one
//! six-dimensional double, and synthetic inputs that scale with the
//! dimension.

use parakahler::catalog::{self, Assignment, Instantiated};
use parakahler::linalg::{dot, unit_vec, vec_scale};
use parakahler::scalar::{int, rat, Rational};
use parakahler::{BilinearProduct, KSymplecticData, Klsa, KxkLsa, LowDimSpec, Mat};

fn assignment(pairs: &[(&str, Rational)]) -> Assignment {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn catalog_pair() -> (Klsa, KxkLsa) {
    let entry = catalog::find_entry("bb_2").unwrap();
    let asg = assignment(&[("a", rat(3, 2))]);
    match catalog::instantiate(entry, &asg).unwrap() {
        Instantiated::Pair { matrix, family } => (family, matrix),
        _ => unreachable!(),
    }
}

pub fn catalog_double() -> KSymplecticData {
    let entry = catalog::find_entry("cc_3^2_pk").unwrap();
    let asg = assignment(&[("a", int(2)), ("b", rat(-1, 3))]);
    match catalog::instantiate(entry, &asg).unwrap() {
        Instantiated::ParaKahler(data) => data,
        _ => unreachable!(),
    }
}

/// A family of n-dimensional left multiplications by a covector value,
/// valid for any size.
pub fn scalar_family(n: usize, k: usize) -> Klsa {
    let c: Vec<Rational> = (0..n).map(|i| rat(i as i64 + 1, 2)).collect();
    let mut products = Vec::with_capacity(k);
    for alpha in 0..k {
        let mu = rat(alpha as i64 + 1, 3);
        let mut p = BilinearProduct::zero(n);
        for i in 0..n {
            for j in 0..n {
                p.set_basis_product(i, j, vec_scale(&(&mu * &c[i]), &unit_vec(n, j)));
            }
        }
        products.push(p);
    }
    Klsa::new(products).unwrap()
}

/// A spec in the scaling normal form, so the classification runs its
/// full verification path.
pub fn normal_form_spec(k: usize) -> LowDimSpec {
    let a: Vec<Rational> = (0..k).map(|i| rat(i as i64 + 1, 2)).collect();
    let c: Vec<Rational> = (0..k).map(|i| rat(2 - i as i64, 3)).collect();
    let lambda = dot(&a, &c) / &a[0];
    let mut d = Mat::zeros(k, k);
    for r in 0..k {
        d.set(r, 0, c[r].clone());
    }
    for i in 1..k {
        for r in 0..k {
            let mut entry = &a[i] * &c[r];
            if r == 0 {
                entry = entry + &lambda * &a[i];
            }
            if r == i {
                entry = entry - &lambda * &a[0];
            }
            d.set(r, i, entry / &a[0]);
        }
    }
    LowDimSpec::new(a, d).unwrap()
}
