//! Canonical JSON rendering of equations and parameter sets.
//!
//! The shape is fixed so that golden files and machine-readable reports stay
//! byte-stable: exact scalars become `"num/den"` strings (the denominator is
//! always written, `"3/1"` not `"3"`), float scalars become `[re, im]`
//! pairs, half-integers become `"k"` or `"k/2"` strings, and object keys are
//! emitted in a fixed order with no whitespace.

use crate::qcore::{HalfInt, Scalar};
use crate::qdiff::{Params2, Params3, Poly, QDifferenceEquation};
use alloc::string::{String, ToString};

/// `"num/den"` for exact values (denominator always present), `[re, im]`
/// for float values.
pub fn scalar_json(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) => {
            let mut out = String::from("\"");
            out.push_str(&r.numer().to_string());
            out.push('/');
            out.push_str(&r.denom().to_string());
            out.push('"');
            out
        }
        Scalar::Float(z) => {
            let mut out = String::from("[");
            push_f64(&mut out, z.re);
            out.push(',');
            push_f64(&mut out, z.im);
            out.push(']');
            out
        }
    }
}

/// Half-integers render through their display form (`"3"`, `"-5/2"`),
/// quoted.
pub fn halfint_json(h: HalfInt) -> String {
    let mut out = String::from("\"");
    out.push_str(&alloc::format!("{h}"));
    out.push('"');
    out
}

fn push_f64(out: &mut String, v: f64) {
    // Rust's shortest round-trip formatting is deterministic; bare `inf`
    // or `NaN` would not be valid JSON, so those become null.
    if v.is_finite() {
        out.push_str(&alloc::format!("{v}"));
    } else {
        out.push_str("null");
    }
}

/// JSON array of the coefficients, constant term first.
pub fn poly_json(p: &Poly) -> String {
    let mut out = String::from("[");
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&scalar_json(c));
    }
    out.push(']');
    out
}

/// `{"u":[…],"v":[…],"w":[…]}` with coefficient arrays constant-first.
pub fn equation_json(eq: &QDifferenceEquation) -> String {
    let mut out = String::from("{\"u\":");
    out.push_str(&poly_json(eq.u()));
    out.push_str(",\"v\":");
    out.push_str(&poly_json(eq.v()));
    out.push_str(",\"w\":");
    out.push_str(&poly_json(eq.w()));
    out.push('}');
    out
}

/// Parameters of the quadratic variant keyed by their symbol names.
pub fn params2_json(p: &Params2) -> String {
    let mut out = String::from("{\"h1\":");
    out.push_str(&halfint_json(p.h1));
    out.push_str(",\"h2\":");
    out.push_str(&halfint_json(p.h2));
    out.push_str(",\"l1\":");
    out.push_str(&halfint_json(p.l1));
    out.push_str(",\"l2\":");
    out.push_str(&halfint_json(p.l2));
    out.push_str(",\"alpha1\":");
    out.push_str(&halfint_json(p.alpha1));
    out.push_str(",\"alpha2\":");
    out.push_str(&halfint_json(p.alpha2));
    out.push_str(",\"t1\":");
    out.push_str(&scalar_json(&p.t1));
    out.push_str(",\"t2\":");
    out.push_str(&scalar_json(&p.t2));
    out.push('}');
    out
}

/// Parameters of the cubic variant keyed by their symbol names.
pub fn params3_json(p: &Params3) -> String {
    let mut out = String::from("{");
    for i in 0..3 {
        out.push_str(&alloc::format!("\"h{}\":", i + 1));
        out.push_str(&halfint_json(p.h[i]));
        out.push(',');
    }
    for i in 0..3 {
        out.push_str(&alloc::format!("\"l{}\":", i + 1));
        out.push_str(&halfint_json(p.l[i]));
        out.push(',');
    }
    out.push_str("\"alpha\":");
    out.push_str(&halfint_json(p.alpha));
    for i in 0..3 {
        out.push_str(&alloc::format!(",\"t{}\":", i + 1));
        out.push_str(&scalar_json(&p.t[i]));
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QContext;
    use crate::qdiff::make_qhypergeometric;

    #[test]
    fn exact_scalars_always_carry_a_denominator() {
        let ctx = QContext::exact(1, 2).unwrap();
        assert_eq!(scalar_json(&ctx.int(3)), "\"3/1\"");
        assert_eq!(scalar_json(&ctx.rat(-2, 6)), "\"-1/3\"");
    }

    #[test]
    fn float_scalars_are_pairs() {
        assert_eq!(scalar_json(&Scalar::float_re(0.25)), "[0.25,0]");
    }

    #[test]
    fn equation_shape_is_stable() {
        let ctx = QContext::exact(1, 2).unwrap();
        let eq =
            make_qhypergeometric(&ctx, &ctx.rat(1, 2), &ctx.int(4), &ctx.rat(1, 4)).unwrap();
        assert_eq!(
            equation_json(&eq),
            "{\"u\":[\"-1/4\",\"1/1\"],\"v\":[\"1/2\",\"-9/2\"],\"w\":[\"-1/4\",\"2/1\"]}"
        );
    }

    #[test]
    fn params_keys_follow_symbol_order() {
        let ctx = QContext::exact(1, 2).unwrap();
        let p = Params2::new(
            &ctx,
            HalfInt::from_int(1),
            HalfInt::HALF,
            HalfInt::ZERO,
            HalfInt::new(-1),
            HalfInt::HALF,
            HalfInt::new(-1),
            ctx.int(2),
            ctx.int(3),
        )
        .unwrap();
        assert_eq!(
            params2_json(&p),
            "{\"h1\":\"1\",\"h2\":\"1/2\",\"l1\":\"0\",\"l2\":\"-1/2\",\
             \"alpha1\":\"1/2\",\"alpha2\":\"-1/2\",\"t1\":\"2/1\",\"t2\":\"3/1\"}"
        );
    }
}
