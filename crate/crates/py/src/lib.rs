use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use iwasawa_core::cyclotomic::{self, CycloCtx};
use iwasawa_core::lemma2;
use iwasawa_core::lemma5;
use iwasawa_core::lfunction;
use iwasawa_core::mirimanoff;
use iwasawa_core::{BernoulliOracle, DeltaChar, DirichletChar, IwasawaPoly, Lambda, PadicCtx};

create_exception!(iwasawa, IwasawaError, PyException);

fn err(e: iwasawa_core::Error) -> PyErr {
    IwasawaError::new_err(e.to_string())
}

fn ctx(p: u64, prec: u32) -> PyResult<PadicCtx> {
    PadicCtx::new(p, prec).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let frac = py.import("fractions")?.getattr("Fraction")?;
    frac.call1((r.numer().clone(), r.denom().clone()))
}

/// Element of `Z/p^N [T] / (omega_n(T))`.
#[pyclass(name = "Series", module = "iwasawa", frozen)]
pub struct PySeries {
    inner: IwasawaPoly<PadicCtx>,
}

#[pymethods]
impl PySeries {
    #[getter]
    fn p(&self) -> u64 {
        self.inner.ring().p()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.level()
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.inner.ring().precision()
    }

    /// coefficients of `(1+T)^i`
    fn group_ring(&self) -> Vec<u128> {
        self.inner.group_ring().to_vec()
    }

    /// coefficients of `T^k`
    fn coefficients(&self) -> Vec<u128> {
        self.inner.to_monomial()
    }

    /// `(mu, lambda)`, lambda is None when undetermined at this precision
    fn mu_lambda(&self) -> PyResult<(u32, Option<u64>)> {
        let ml = self.inner.mu_lambda().map_err(err)?;
        let lam = match ml.lambda {
            Lambda::Resolved(l) => Some(l),
            Lambda::Unresolved => None,
        };
        Ok((ml.mu, lam))
    }

    fn derivative_nonzero_mod_p(&self) -> bool {
        self.inner.derivative_nonzero_mod_p()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn evaluate(&self, t: u128) -> u128 {
        let m = self.inner.ring().modulus();
        self.inner.evaluate(&(t % m))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Series(p={}, n={}, N={})", self.p(), self.n(), self.precision())
    }
}

fn wrap(inner: IwasawaPoly<PadicCtx>) -> PySeries {
    PySeries { inner }
}

#[pyfunction]
#[pyo3(signature = (p, j, n, prec=2))]
fn f_series(p: u64, j: i64, n: u32, prec: u32) -> PyResult<PySeries> {
    let theta = DeltaChar::new(ctx(p, prec)?, j);
    Ok(wrap(lfunction::f_series(&theta, n).map_err(err)?.series))
}

#[pyfunction]
#[pyo3(signature = (p, j, n, prec=2))]
fn v_element(p: u64, j: i64, n: u32, prec: u32) -> PyResult<PySeries> {
    let theta = DeltaChar::new(ctx(p, prec)?, j);
    Ok(wrap(lfunction::v_element(&theta, n).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (p, j, a, n, prec=2))]
fn mirimanoff_series(p: u64, j: i64, a: u128, n: u32, prec: u32) -> PyResult<PySeries> {
    let c = ctx(p, prec)?;
    let m = mirimanoff::mirimanoff_series(&c, &DeltaChar::new(c, j), &(a % c.modulus()), n).map_err(err)?;
    Ok(wrap(m.series))
}

/// Rows `(p, j, mu, lambda, fprime_nonzero)`.
#[pyfunction]
#[pyo3(signature = (primes, n=1, prec=1))]
fn lambda_table(py: Python<'_>, primes: Vec<u64>, n: u32, prec: u32) -> PyResult<Vec<(u64, u64, u32, Option<u64>, bool)>> {
    let rows = py.detach(|| lfunction::lambda_table(&primes, n, prec)).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let lam = match r.lambda {
                Lambda::Resolved(l) => Some(l),
                Lambda::Unresolved => None,
            };
            (r.p, r.j, r.mu, lam, r.fprime_nonzero)
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (p, j, d, n, prec=2, seed=0))]
fn theorem5_check(p: u64, j: i64, d: u64, n: u32, prec: u32, seed: u64) -> PyResult<bool> {
    let theta = DeltaChar::new(ctx(p, prec)?, j);
    Ok(lfunction::theorem5_check(&theta, d, n, seed).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, d, index, j, n, prec=2, seed=0))]
fn theorem6_check(p: u64, d: u64, index: u64, j: i64, n: u32, prec: u32, seed: u64) -> PyResult<bool> {
    let chi = DirichletChar::new(p, prec, d, index, j, seed).map_err(err)?;
    Ok(lfunction::theorem6_check(&chi, n).map_err(err)?.holds())
}

#[pyfunction]
#[pyo3(signature = (p, j, n, prec=1))]
fn corollary1_check(p: u64, j: i64, n: u32, prec: u32) -> PyResult<bool> {
    let theta = DeltaChar::new(ctx(p, prec)?, j);
    Ok(lfunction::corollary1_check(&theta, n).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, j, m, n, prec=2))]
fn interpolation_check(p: u64, j: i64, m: u64, n: u32, prec: u32) -> PyResult<bool> {
    let theta = DeltaChar::new(ctx(p, prec)?, j);
    let mut oracle = BernoulliOracle::new();
    Ok(lfunction::interpolation_check(&theta, m, n, &mut oracle).map_err(err)?.holds)
}

#[pyfunction]
fn bernoulli(py: Python<'_>, k: usize) -> PyResult<Bound<'_, PyAny>> {
    let mut oracle = BernoulliOracle::new();
    fraction(py, &oracle.bernoulli(k))
}

#[pyfunction]
fn lemma2_identities(p: u64, n: u32, d: u32) -> PyResult<bool> {
    lemma2::lemma2_identities(p, n, d).map_err(err)
}

/// Dict with `s_exact`, `s_closed` (Fractions), `m`, `b`, `matches`, `square_flag`.
#[pyfunction]
fn lemma5_trace(py: Python<'_>, ell: u64, p: u64) -> PyResult<Bound<'_, pyo3::types::PyDict>> {
    let t = lemma5::lemma5_trace(ell, p).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("ell", t.ell)?;
    d.set_item("p", t.p)?;
    d.set_item("m", t.m)?;
    d.set_item("b", t.b)?;
    d.set_item("s_exact", fraction(py, &t.s_exact)?)?;
    d.set_item("s_closed", fraction(py, &t.s_closed)?)?;
    d.set_item("matches", t.matches)?;
    d.set_item("square_flag", t.square_flag)?;
    Ok(d)
}

#[pyfunction]
fn alpha_class_search(p: u64) -> PyResult<(u64, Vec<u64>)> {
    let a = lemma5::alpha_class_search(p).map_err(err)?;
    Ok((a.alpha, a.confirmed))
}

fn cyclo(p: u64, n: u32, prec: u32) -> PyResult<CycloCtx> {
    CycloCtx::new(p, n, prec).map_err(err)
}

fn teich(cc: &CycloCtx, a: u128) -> PyResult<u128> {
    cc.ctx().teichmuller(a).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, n, prec=2))]
fn inv_pi_identity(p: u64, n: u32, prec: u32) -> PyResult<bool> {
    Ok(cyclotomic::inv_pi_identity(&cyclo(p, n, prec)?).holds)
}

/// `alpha` is given by its residue mod p and lifted to a Teichmüller root.
#[pyfunction]
#[pyo3(signature = (p, n, alpha, prec=2))]
fn thm1_tn_identity(p: u64, n: u32, alpha: u128, prec: u32) -> PyResult<bool> {
    let cc = cyclo(p, n, prec)?;
    let al = teich(&cc, alpha)?;
    Ok(cyclotomic::thm1_tn_identity(&cc, al).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, n, j, prec=2))]
fn stickelberger_projection_check(p: u64, n: u32, j: i64, prec: u32) -> PyResult<bool> {
    let cc = cyclo(p, n, prec)?;
    let theta = DeltaChar::new(cc.ctx(), j);
    Ok(cyclotomic::stickelberger_projection_check(&cc, &theta).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, n, alpha, a, prec=3))]
fn lemma1_check(p: u64, n: u32, alpha: u128, a: u128, prec: u32) -> PyResult<bool> {
    let cc = cyclo(p, n, prec)?;
    let al = teich(&cc, alpha)?;
    Ok(cyclotomic::lemma1_check(&cc, al, a).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, n, j, alpha, prec=2))]
fn theorem4_dn_check(p: u64, n: u32, j: i64, alpha: u128, prec: u32) -> PyResult<bool> {
    let cc = cyclo(p, n, prec)?;
    let al = teich(&cc, alpha)?;
    let theta = DeltaChar::new(cc.ctx(), j);
    Ok(cyclotomic::theorem4_dn_check(&cc, &theta, al).map_err(err)?.holds)
}

#[pyfunction]
#[pyo3(signature = (p, prec, a))]
fn teichmuller(p: u64, prec: u32, a: u128) -> PyResult<u128> {
    ctx(p, prec)?.teichmuller(a).map_err(err)
}

#[pymodule]
fn iwasawa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("IwasawaError", m.py().get_type::<IwasawaError>())?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(f_series, m)?)?;
    m.add_function(wrap_pyfunction!(v_element, m)?)?;
    m.add_function(wrap_pyfunction!(mirimanoff_series, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_table, m)?)?;
    m.add_function(wrap_pyfunction!(theorem5_check, m)?)?;
    m.add_function(wrap_pyfunction!(theorem6_check, m)?)?;
    m.add_function(wrap_pyfunction!(corollary1_check, m)?)?;
    m.add_function(wrap_pyfunction!(interpolation_check, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_identities, m)?)?;
    m.add_function(wrap_pyfunction!(lemma5_trace, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_class_search, m)?)?;
    m.add_function(wrap_pyfunction!(inv_pi_identity, m)?)?;
    m.add_function(wrap_pyfunction!(thm1_tn_identity, m)?)?;
    m.add_function(wrap_pyfunction!(stickelberger_projection_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_check, m)?)?;
    m.add_function(wrap_pyfunction!(theorem4_dn_check, m)?)?;
    m.add_function(wrap_pyfunction!(teichmuller, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

