//! Stored values: presentations of the spaces and the numbers the checks
//! compare against.

use serde::{Deserialize, Serialize};

/// Presentations of the spaces with a ring structure.
pub const BUILTIN_RINGS: &str = "\
# P = F4/Spin(9), the octonionic projective plane
ring P {
    gen a:8;
    rel a^3;
    top 16;
}

# Q, the complex quadric of dimension 15
ring Q {
    gen s:2;
    gen v:8;
    rel s^8 - 3*v^2;
    rel (2*v - s^4)^3;
    top 30;
}

ring R {
    gen t:2;
    gen w:8;
    rel t^9 - 3*t*w^2;
    rel w^3 + 15*t^4*w^2 - 9*t^8*w;
    top 32;
}

# the Grassmannian of oriented 2-planes in R^9
ring Gr2R9 {
    gen e:2;
    gen b:8;
    rel e^4 - 2*b;
    rel b^2;
    top 14;
}
";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstValue {
    Integers { values: Vec<i64> },
    Rationals { values: Vec<String> },
    /// `space` is a ring name or a variable list like `s:2,a:8`.
    Polynomials { space: String, values: Vec<String> },
}

impl ConstValue {
    pub fn len(&self) -> usize {
        match self {
            ConstValue::Integers { values } => values.len(),
            ConstValue::Rationals { values } => values.len(),
            ConstValue::Polynomials { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constant {
    pub id: String,
    pub citation: String,
    pub value: ConstValue,
    /// Checks that read this constant.
    pub checks: Vec<String>,
}

fn ints(values: &[i64]) -> ConstValue {
    ConstValue::Integers { values: values.to_vec() }
}

fn rats(values: &[&str]) -> ConstValue {
    ConstValue::Rationals { values: values.iter().map(|s| s.to_string()).collect() }
}

fn polys(space: &str, values: &[&str]) -> ConstValue {
    ConstValue::Polynomials { space: space.into(), values: values.iter().map(|s| s.to_string()).collect() }
}

fn c(id: &str, citation: &str, value: ConstValue, checks: &[&str]) -> Constant {
    Constant {
        id: id.into(),
        citation: citation.into(),
        value,
        checks: checks.iter().map(|s| s.to_string()).collect(),
    }
}

/// Auxiliary polynomial contexts.
pub const SA: &str = "s:2,a:8";
pub const TWA: &str = "t:2,w:8,a8:8";

pub fn default_constants() -> Vec<Constant> {
    vec![
        c(
            "betti_R",
            "b_2k(R) for k = 0..16",
            ints(&[1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1]),
            &["betti_R_Q", "relations_R", "rank_additivity", "chern_consistency"],
        ),
        c(
            "betti_P",
            "H*(P) = Z[a]/(a^3), b_2k(P) for k = 0..8",
            ints(&[1, 0, 0, 0, 1, 0, 0, 0, 1]),
            &["rank_additivity"],
        ),
        c(
            "poincare_Q_base",
            "Poincare polynomial of Q, factor 1 + x^2 + ... + x^14",
            ints(&[0, 2, 4, 6, 8, 10, 12, 14]),
            &["betti_R_Q", "poincare_Q"],
        ),
        c(
            "poincare_Q_fibre",
            "Poincare polynomial of Q, factor 1 + x^8 + x^16",
            ints(&[0, 8, 16]),
            &["betti_R_Q", "poincare_Q"],
        ),
        c(
            "pairing_Q30_monomials",
            "the products to H^30(Q)",
            polys("Q", &["s^15", "s^11*v", "s^7*v^2", "s^3*v^3"]),
            &["pairing_Q30"],
        ),
        c("pairing_Q30_values", "the products to H^30(Q)", ints(&[78, 45, 26, 15]), &["pairing_Q30"]),
        c(
            "pairing_R32_monomials",
            "the products to H^32(R)",
            polys("R", &["t^16", "t^12*w", "t^8*w^2", "t^4*w^3", "w^4"]),
            &["pairing_R32", "deg18_24_relations", "euler_chars"],
        ),
        c(
            "pairing_R32_values",
            "the products to H^32(R)",
            ints(&[78, 45, 26, 15, 9]),
            &["pairing_R32", "deg18_24_relations", "euler_chars"],
        ),
        c(
            "pairing_R16_determinant",
            "det of the H^16(R) pairing with w^4 unknown, coefficients of x and 1",
            ints(&[3, -26]),
            &["pairing_R32"],
        ),
        c("euler_TP", "e(TP) = 3a^2", polys("P", &["3*a^2"]), &["gysin_S", "euler_chars"]),
        c("sphere_dim_S", "S is an S^15-bundle over P", ints(&[15]), &["gysin_S"]),
        c("gysin_S_free", "H^i(S) = Z for i = 0, 8, 23, 31", ints(&[0, 8, 23, 31]), &["gysin_S"]),
        c("gysin_S_torsion", "H^16(S) = Z/3", ints(&[16, 3]), &["gysin_S"]),
        c("pontryagin_TP", "p(TP) = 1 + 6a + 39a^2", polys("P", &["1 + 6*a + 39*a^2"]), &["tangent_P"]),
        c(
            "pontryagin_U9",
            "p(U_9) = 1 - 6a - 3a^2",
            polys("P", &["1 - 6*a - 3*a^2"]),
            &["tangent_P", "pontryagin_lemma"],
        ),
        c("sw_U9", "w(U_7)(1+s) = 1 + a", polys("P", &["1 + a"]), &["sw_lemma"]),
        c("sw_U2", "w(U_7)(1+s) = 1 + a", polys(SA, &["1 + s"]), &["sw_lemma"]),
        c("pontryagin_U2", "p(U_2)p(U_7) = q^*(p(U_9))", polys(SA, &["1 - s^2"]), &["pontryagin_lemma"]),
        c("w8_U7", "2v = s^4 + a", polys(SA, &["s^4 + a"]), &["sw_lemma"]),
        c(
            "a_in_Q",
            "2v = s^4 + a",
            polys("Q", &["2*v - s^4"]),
            &["sw_lemma", "pontryagin_lemma", "leray_hirsch_basis"],
        ),
        c("p4_U7", "s^8 = 3v^2", polys(SA, &["s^8 - 6*a*s^4 - 3*a^2"]), &["pontryagin_lemma"]),
        c("p4_U7_in_Q", "s^8 = 3v^2", polys("Q", &["4*s^8 - 12*v^2"]), &["pontryagin_lemma"]),
        c("relation_Q16", "s^8 = 3v^2", polys("Q", &["s^8 - 3*v^2"]), &["pontryagin_lemma"]),
        c(
            "relations_R",
            "r18 = t^9 - 3w^2t, r24 = w^3 + 15w^2t^4 - 9wt^8",
            polys("R", &["t^9 - 3*t*w^2", "w^3 + 15*t^4*w^2 - 9*t^8*w"]),
            &["relations_R", "deg18_24_relations"],
        ),
        c(
            "leray_hirsch_basis",
            "1, s, s^2, s^3, v, sv, s^2v, s^3v",
            polys("Q", &["1", "s", "s^2", "s^3", "v", "s*v", "s^2*v", "s^3*v"]),
            &["leray_hirsch_basis"],
        ),
        c("jstar_images", "j^*(t) = s, j^*(w) = v", polys("Q", &["s", "v"]), &["jstar_hom", "umkehr_formulas"]),
        c("istar_images", "i^*(t) = 0, i^*(w) = a", polys("P", &["0", "a"]), &["rank_additivity"]),
        c(
            "umkehr_sources",
            "j_!(j^*(b)) = bt",
            polys("Q", &["1", "s^7", "s^3*v"]),
            &["umkehr_formulas"],
        ),
        c(
            "umkehr_images",
            "j_!(j^*(b)) = bt",
            polys("R", &["t", "t^8", "t^4*w"]),
            &["umkehr_formulas"],
        ),
        c("umkehr_multiplier", "j_!(j^*(b)) = bt", polys("R", &["t"]), &["umkehr_formulas"]),
        c(
            "presentation_alpha_beta",
            "t x^2 + alpha t^5 x - beta t^9 = 0",
            rats(&["27/4", "39/64"]),
            &["presentation_change"],
        ),
        c(
            "presentation_relation",
            "the cubic relation satisfied by a_8",
            polys(TWA, &["a8^3 + 369/8*t^4*a8^2 - 2997/64*t^8*a8 + 1539/512*t^12"]),
            &["presentation_change"],
        ),
        c(
            "presentation_generator",
            "the unique indecomposable element a_8",
            polys("R", &["6*w - 27/8*t^4"]),
            &["presentation_change"],
        ),
        c(
            "chern_TcR",
            "Chern classes of T_cR, c_16 = 3w^4",
            polys(
                "R",
                &[
                    "12*t",
                    "69*t^2",
                    "252*t^3",
                    "657*t^4 - 6*w",
                    "1296*t^5 - 36*t*w",
                    "1995*t^6 - 102*t^2*w",
                    "2448*t^7 - 198*t^3*w",
                    "2412*t^8 - 288*t^4*w + 39*w^2",
                    "-270*t^5*w + 5760*t*w^2",
                    "-180*t^6*w + 3645*t^2*w^2",
                    "-432*t^7*w + 2430*t^3*w^2",
                    "750*t^4*w^2 - 136*w^3",
                    "360*t*w^3",
                    "84*t^2*w^3",
                    "1512*t^3*w^3 - 864*t^7*w^2",
                    "3*w^4",
                ],
            ),
            &["chern_consistency", "bundle_relation", "euler_chars"],
        ),
        c(
            "phi_expected",
            "c_1 = 12t, t = 4a_2: images of y and q1",
            polys("R", &["1/4*t", "-3/4*t^2"]),
            &["chern_consistency"],
        ),
    ]
}
