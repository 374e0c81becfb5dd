use std::collections::HashMap;

use super::affine::AffineForm;
use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::{t_var, AlgebraError};

/// `Σ_{a≥1} a^k·w^a` as a rational function of `w`.
///
/// Built from `S_0 = w/(1-w)` by `S_{k+1} = θ_w S_k`.
pub fn power_sum(k: u32, w: &Var) -> RationalFunction {
    let wp = Polynomial::var(w.clone());
    let mut s =
        RationalFunction::new(wp.clone(), &Polynomial::one() - &wp).expect("1 - w is nonzero");
    for _ in 0..k {
        s = s.theta(w);
    }
    s
}

/// `Σ_{a ≥ 1} p(a)·t^{L(a)}·Π z_k^{a_k}` over all vectors `a` with positive
/// components.
///
/// The summation variables are the variables of `form` in their natural
/// order; the k-th one is paired with `zvars[k]`. Each monomial
/// `Π a_k^{e_k}` of `p` contributes `t^{c0}·Π S_{e_k}(t^{c_k}·z_k)` where
/// `S_e` is [`power_sum`].
pub fn closed_sum(
    p: &Polynomial,
    form: &AffineForm,
    zvars: &[Var],
) -> Result<RationalFunction, AlgebraError> {
    let form = form.clone().validated()?;
    let avars: Vec<Var> = form.variables().cloned().collect();
    if avars.len() != zvars.len() {
        return Err(AlgebraError::InvalidAffineForm {
            form: form.to_string(),
            reason: format!(
                "{} summation variables but {} marker variables",
                avars.len(),
                zvars.len()
            ),
        });
    }
    if let Some(v) = p.variables().into_iter().find(|v| !avars.contains(v)) {
        return Err(AlgebraError::ForeignVariable(v.to_string()));
    }

    let t = t_var();
    let w = Var::new("w");
    let shift = RationalFunction::var_pow(&t, form.constant);
    let mut cache: HashMap<(usize, u32), RationalFunction> = HashMap::new();
    let mut total = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = shift.scale(c);
        for (k, (a, z)) in avars.iter().zip(zvars).enumerate() {
            let e = m.degree_in(a);
            let factor = cache.entry((k, e)).or_insert_with(|| {
                let image =
                    Monomial::from_pairs([(t.clone(), form.coeff(a) as u32), (z.clone(), 1)]);
                power_sum(e, &w).substitute_monomial(&w, &image)
            });
            term = &term * factor;
        }
        total = &total + &term;
    }
    Ok(total)
}
