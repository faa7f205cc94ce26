use super::{AlgebraElement, GenToken};
use crate::error::{Error, Result};
use crate::indexing::{co, monomial_chain, rank_r, ThetaMatrix, WeightComposition};
use crate::{q, Rational};

/// `h'_1, ..., h'_r` as expanded bracket words.
pub fn cartan_hprime(n: usize) -> Result<Vec<AlgebraElement>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("h' needs n >= 2, got {n}")));
    }
    let r = rank_r(n);
    let mut out = vec![AlgebraElement::zero(n); r];
    out[r - 1] =
        if n % 2 == 1 { AlgebraElement::e(n, r).bracket(&AlgebraElement::f(n, r)) } else { AlgebraElement::e(n, r) };
    for i in (1..r).rev() {
        out[i - 1] = AlgebraElement::e(n, i).bracket(&out[i]).bracket(&AlgebraElement::f(n, i));
    }
    Ok(out)
}

/// `f^a e^b f^c 1_λ̄` in rank three.
pub fn monomial_m(a: usize, b: usize, c: usize, lambda: &WeightComposition) -> AlgebraElement {
    let mut w = Vec::with_capacity(a + b + c + 1);
    w.extend(std::iter::repeat_n(GenToken::F(1), a));
    w.extend(std::iter::repeat_n(GenToken::E(1), b));
    w.extend(std::iter::repeat_n(GenToken::F(1), c));
    w.push(GenToken::idem(lambda));
    AlgebraElement::word(3, w, q(1))
}

fn factorial(k: i64) -> Rational {
    (1..=k).fold(q(1), |acc, x| acc * q(x))
}

/// The product over the monomial chain of `A`, each band of multiplicity
/// `s` contributing a divided power, applied to the idempotent of `co(A)`.
///
/// The band `E_{h+1,h} + E_{n-h,n+1-h}` is the generator `f_h = e_{n-h}`,
/// written as an `e` token.
pub fn chain_element(a: &ThetaMatrix) -> Result<AlgebraElement> {
    let n = a.n();
    let chain = monomial_chain(a)?;
    let mut word = Vec::new();
    let mut coeff = q(1);
    for step in &chain {
        let s = step.multiplicity;
        word.extend(std::iter::repeat_n(GenToken::E(n - step.band), s as usize));
        coeff /= factorial(s);
    }
    word.push(GenToken::idem(&co(a)));
    Ok(AlgebraElement::word(n, word, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hprime_examples() {
        assert_eq!(cartan_hprime(2).unwrap(), vec![AlgebraElement::e(2, 1)]);
        let h3 = cartan_hprime(3).unwrap();
        assert_eq!(h3[0], AlgebraElement::e(3, 1).bracket(&AlgebraElement::f(3, 1)));
        assert_eq!(h3[0].len(), 2);
        let h5 = cartan_hprime(5).unwrap();
        assert_eq!(h5.len(), 2);
        assert_eq!(h5[0].len(), 8);
        assert_eq!(cartan_hprime(4).unwrap()[0].len(), 4);
    }

    #[test]
    fn monomial_examples() {
        let l: WeightComposition = "[1,2,1]".parse().unwrap();
        assert_eq!(monomial_m(0, 0, 0, &l), AlgebraElement::token(3, GenToken::idem(&l)));
        assert_eq!(monomial_m(0, 1, 0, &l), AlgebraElement::e(3, 1).mul(&AlgebraElement::token(3, GenToken::idem(&l))));
    }

    #[test]
    fn chain_element_examples() {
        let d = ThetaMatrix::parse("2,0;0,2", None).unwrap();
        assert_eq!(chain_element(&d).unwrap(), AlgebraElement::token(2, GenToken::idem(&co(&d))));
        let a = ThetaMatrix::parse("0,1;1,0", None).unwrap();
        assert_eq!(
            chain_element(&a).unwrap(),
            AlgebraElement::e(2, 1).mul(&AlgebraElement::token(2, GenToken::idem(&co(&a))))
        );
        let b = ThetaMatrix::parse("0,2;2,0", None).unwrap();
        let x = chain_element(&b).unwrap();
        assert_eq!(x.terms().values().next().unwrap(), &(q(1) / q(2)));
        let c = ThetaMatrix::parse("1,1,0;1,0,1;0,1,1", None).unwrap();
        let w = chain_element(&c).unwrap();
        assert_eq!(w.terms().keys().next().unwrap().len(), 3);
    }
}
