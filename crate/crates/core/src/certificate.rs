//! Certificate serialization and independent re-checking.
//!
//! A serialized certificate is a JSON object with the fields, in order:
//! `primes`, `m`, `x`, `x_decimal` (present iff `t <= 4096`), `prime_bound`,
//! `mode`, `positive_cases`, `negative_cases`, `verified`, `digest`. Integers
//! that can exceed 64 bits are decimal strings. `digest` is the SHA-256 of the
//! compact serialization of all preceding fields.
//!
//! [`check_certificate`] re-validates a serialized certificate without running
//! any search: positive cases are re-multiplied, negative cases are checked
//! with one division each, and exhaustive evidence is checked against the
//! projected candidate count.

use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::arith::Nat;
use crate::error::{Error, Result};
use crate::powersum::{search_bound, verify_representation, EvidenceKind, NonRepEvidence, Representation};
use crate::primes::{primes_up_to, radical_product, PrimeSet};
use crate::theorem::{make_witness, Mode, Witness, DECIMAL_EXPONENT_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositiveCase {
    pub p: u64,
    pub a: Nat,
    pub b: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeCase {
    pub q: u64,
    pub evidence: NonRepEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub witness: Witness,
    pub prime_bound: u64,
    pub mode: Mode,
    pub positive_cases: Vec<PositiveCase>,
    pub negative_cases: Vec<NegativeCase>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerDoc {
    base: u64,
    exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    primes: Vec<u64>,
    m: Nat,
    x: PowerDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_decimal: Option<Nat>,
    prime_bound: u64,
    mode: Mode,
    positive_cases: Vec<PositiveCase>,
    negative_cases: Vec<NegativeCase>,
    verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
}

impl CertificateDoc {
    fn content_digest(&self) -> String {
        let body = CertificateDoc {
            digest: None,
            ..self.clone()
        };
        let bytes = serde_json::to_vec(&body).expect("certificate serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::CertificateRejected(msg.into())
}

impl Certificate {
    fn to_doc(&self) -> CertificateDoc {
        let w = &self.witness;
        let mut doc = CertificateDoc {
            primes: w.primes.as_slice().to_vec(),
            m: w.m.clone(),
            x: PowerDoc { base: 2, exponent: w.t },
            x_decimal: (w.t <= DECIMAL_EXPONENT_LIMIT).then(|| w.x_value()),
            prime_bound: self.prime_bound,
            mode: self.mode,
            positive_cases: self.positive_cases.clone(),
            negative_cases: self.negative_cases.clone(),
            verified: self.verified,
            digest: None,
        };
        doc.digest = Some(doc.content_digest());
        doc
    }

    pub fn digest(&self) -> String {
        self.to_doc().content_digest()
    }

    /// Compact JSON, byte-identical for identical certificates.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("certificate serializes")
    }

    /// Parses a serialized certificate and checks its digest and witness fields.
    /// Does not evaluate the cases; see [`Certificate::evaluate`].
    pub fn from_json(text: &str) -> Result<Certificate> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| reject(format!("malformed: {e}")))?;
        let digest = doc.digest.as_deref().ok_or_else(|| reject("missing digest"))?;
        if digest != doc.content_digest() {
            return Err(reject("digest does not match content"));
        }

        let primes = PrimeSet::new(doc.primes.iter().copied()).map_err(|e| reject(e.to_string()))?;
        if primes.as_slice() != doc.primes.as_slice() {
            return Err(reject("primes are not strictly increasing"));
        }
        if radical_product(&primes) != doc.m {
            return Err(reject("m is not the product of the primes"));
        }
        let witness = make_witness(&primes).map_err(|e| reject(e.to_string()))?;
        if doc.x.base != 2 || doc.x.exponent != witness.t {
            return Err(reject("x is not 2^(m+1)"));
        }
        if doc.x_decimal != (witness.t <= DECIMAL_EXPONENT_LIMIT).then(|| witness.x_value()) {
            return Err(reject("x_decimal does not match x"));
        }

        Ok(Certificate {
            witness,
            prime_bound: doc.prime_bound,
            mode: doc.mode,
            positive_cases: doc.positive_cases,
            negative_cases: doc.negative_cases,
            verified: doc.verified,
        })
    }

    /// Checks every case. `Ok` means the content proves the claim for all
    /// primes up to `prime_bound`; the `verified` flag itself is not consulted.
    pub fn evaluate(&self) -> Result<()> {
        let w = &self.witness;
        let x = w.x_value();

        let ps: Vec<u64> = self.positive_cases.iter().map(|c| c.p).collect();
        if ps != w.primes.as_slice() {
            return Err(reject("positive cases do not match the prime set"));
        }
        for c in &self.positive_cases {
            let p = u32::try_from(c.p).map_err(|_| reject("exponent out of range"))?;
            let rep = Representation {
                n: x.clone(),
                p,
                a: c.a.clone(),
                b: c.b.clone(),
            };
            if !verify_representation(&rep) {
                return Err(reject(format!("positive case p={} does not sum to x", c.p)));
            }
        }

        if self.prime_bound < 2 {
            return Err(reject("prime bound below 2"));
        }
        let expected: Vec<u64> = primes_up_to(self.prime_bound)
            .map_err(|e| reject(e.to_string()))?
            .into_iter()
            .filter(|&q| !w.primes.contains(q))
            .collect();
        let qs: Vec<u64> = self.negative_cases.iter().map(|c| c.q).collect();
        if qs != expected {
            return Err(reject("negative cases do not cover the primes outside the set"));
        }

        let mut caps = self.negative_cases.iter().filter_map(|c| c.evidence.cap);
        if let Some(first) = caps.next() {
            if caps.any(|c| c != first) {
                return Err(reject("exhaustive evidence uses differing caps"));
            }
        }
        for c in &self.negative_cases {
            self.check_evidence(c, &x)
                .map_err(|msg| reject(format!("q={}: {msg}", c.q)))?;
        }
        Ok(())
    }

    fn check_evidence(&self, case: &NegativeCase, x: &Nat) -> std::result::Result<(), String> {
        let ev = &case.evidence;
        let q = case.q;
        let want_kind = match self.mode {
            Mode::Structural => EvidenceKind::Structural,
            Mode::Exhaustive => EvidenceKind::Exhaustive,
            Mode::Both => EvidenceKind::Both,
        };
        if ev.kind != want_kind {
            return Err(format!("evidence kind does not match mode {}", self.mode));
        }
        let structural = matches!(ev.kind, EvidenceKind::Structural | EvidenceKind::Both);
        let exhaustive = matches!(ev.kind, EvidenceKind::Exhaustive | EvidenceKind::Both);

        let remainder = (self.witness.t - 1) % q;
        if remainder == 0 {
            return Err("q divides m, so x is representable".into());
        }
        match (structural, ev.remainder) {
            (true, Some(r)) if r == remainder => {}
            (true, _) => return Err(format!("remainder must be {remainder}")),
            (false, Some(_)) => return Err("unexpected remainder".into()),
            (false, None) => {}
        }
        match (exhaustive, ev.cap, ev.iterations) {
            (true, Some(cap), Some(iters)) => {
                let p = u32::try_from(q).map_err(|_| "exponent out of range".to_string())?;
                let bound = search_bound(x, p).map_err(|e| e.to_string())?;
                if bound.to_u64() != Some(iters) {
                    return Err(format!("iterations must be {bound}"));
                }
                if iters > cap {
                    return Err("iterations exceed cap".into());
                }
            }
            (true, _, _) => return Err("exhaustive evidence needs cap and iterations".into()),
            (false, None, None) => {}
            (false, _, _) => return Err("unexpected search fields".into()),
        }
        Ok(())
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(serializer)
    }
}

/// Re-checks a serialized certificate. Succeeds only if the digest matches,
/// every case holds, and the certificate claims `verified: true`.
pub fn check_certificate(text: &str) -> Result<Certificate> {
    let cert = Certificate::from_json(text)?;
    cert.evaluate()?;
    if !cert.verified {
        return Err(reject("certificate does not claim verification"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powersum::DEFAULT_SEARCH_CAP;
    use crate::theorem::verify_certificate;

    fn cert(p: &[u64], mode: Mode) -> Certificate {
        verify_certificate(&PrimeSet::new(p.to_vec()).unwrap(), 13, mode, DEFAULT_SEARCH_CAP).unwrap()
    }

    #[test]
    fn field_order_and_shape() {
        let json = cert(&[2, 3], Mode::Structural).to_json();
        let keys = [
            "\"primes\":[2,3]",
            "\"m\":\"6\"",
            "\"x\":{\"base\":2,\"exponent\":7}",
            "\"x_decimal\":\"128\"",
            "\"prime_bound\":13",
            "\"mode\":\"structural\"",
            "\"positive_cases\":[{\"p\":2,\"a\":\"8\",\"b\":\"8\"},{\"p\":3,\"a\":\"4\",\"b\":\"4\"}]",
            "\"negative_cases\":[{\"q\":5,\"evidence\":{\"kind\":\"structural\",\"remainder\":1}}",
            "\"verified\":true",
            "\"digest\":\"sha256:",
        ];
        let mut last = 0;
        for k in keys {
            let pos = json.find(k).unwrap_or_else(|| panic!("{k} missing from {json}"));
            assert!(pos >= last, "{k} out of order");
            last = pos;
        }
    }

    #[test]
    fn round_trip_checks() {
        for mode in [Mode::Structural, Mode::Exhaustive, Mode::Both] {
            let c = cert(&[2, 3], mode);
            let back = check_certificate(&c.to_json()).unwrap();
            assert_eq!(back, c);
            assert_eq!(check_certificate(&c.to_json_pretty()).unwrap(), c);
        }
    }

    #[test]
    fn large_witness_omits_decimal() {
        let c = verify_certificate(&PrimeSet::new([2, 3, 5, 7, 11, 13]).unwrap(), 17, Mode::Structural, 10).unwrap();
        assert!(c.verified);
        let json = c.to_json();
        assert!(!json.contains("x_decimal"));
        assert!(json.contains("\"exponent\":30031"));
        check_certificate(&json).unwrap();
    }

    #[test]
    fn rejects_unverified_claim() {
        let mut c = cert(&[2, 3], Mode::Both);
        c.positive_cases[1] = PositiveCase {
            p: 3,
            a: Nat::from(2u64),
            b: Nat::from(5u64),
        };
        c.verified = c.evaluate().is_ok();
        assert!(!c.verified);
        // digest is valid but the content is not
        assert!(check_certificate(&c.to_json()).is_err());
        c.verified = true;
        assert!(check_certificate(&c.to_json()).is_err());
    }

    #[test]
    fn rejects_noncanonical_decimal() {
        let json = cert(&[2, 3], Mode::Structural)
            .to_json()
            .replace("\"x_decimal\":\"128\"", "\"x_decimal\":\"0128\"");
        assert!(check_certificate(&json).is_err());
    }

    #[test]
    fn rejects_missing_digest_and_unknown_fields() {
        let json = cert(&[2], Mode::Structural).to_json();
        let cut = json.find(",\"digest\"").unwrap();
        let no_digest = format!("{}}}", &json[..cut]);
        assert!(check_certificate(&no_digest).is_err());
        let extra = json.replacen('{', "{\"extra\":1,", 1);
        assert!(check_certificate(&extra).is_err());
    }

    #[test]
    fn evaluate_catches_wrong_cases() {
        let good = cert(&[2, 3], Mode::Both);

        let mut c = good.clone();
        c.negative_cases.pop();
        assert!(c.evaluate().is_err());

        let mut c = good.clone();
        c.negative_cases[0].evidence.remainder = Some(2);
        assert!(c.evaluate().is_err());

        let mut c = good.clone();
        c.negative_cases[0].evidence.iterations = Some(0);
        assert!(c.evaluate().is_err());

        let mut c = good.clone();
        c.negative_cases[0].evidence.cap = Some(1);
        assert!(c.evaluate().is_err());

        let mut c = good.clone();
        c.mode = Mode::Structural;
        assert!(c.evaluate().is_err());

        let mut c = good.clone();
        c.prime_bound = 11;
        assert!(c.evaluate().is_err());

        good.evaluate().unwrap();
    }
}
