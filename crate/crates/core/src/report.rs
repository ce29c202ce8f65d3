//! Shared helpers for text and JSON reports.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Integers that fit in `i64` are written as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    struct Item<'a>(&'a BigInt);

    impl serde::Serialize for Item<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::serialize_bigint(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Item(x))?;
        }
        seq.end()
    }
}

pub(crate) mod bigint_matrix {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    struct Row<'a>(&'a [BigInt]);

    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::bigint_list::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for r in m {
            seq.serialize_element(&Row(r))?;
        }
        seq.end()
    }
}

/// `[a,b,c]` with no spaces.
pub fn format_list<T: std::fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Rows of a matrix joined with `;`, e.g. `[[1,0];[0,1]]`.
pub fn format_matrix(m: &[Vec<BigInt>]) -> String {
    format!("[{}]", m.iter().map(|r| format_list(r)).collect::<Vec<_>>().join(";"))
}
