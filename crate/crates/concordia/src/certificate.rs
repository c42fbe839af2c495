//! Text serialization and verification of special-pair certificates.
//!
//! The format is line-based and canonical: a certificate re-derived from
//! the header data serializes to exactly the same bytes, so verification
//! is re-derivation plus byte comparison, with every evidence element
//! additionally re-checked nonzero in its quotient ring.

use thiserror::Error;

use crate::fox::{FoxEngine, Level, RingElem};
use crate::limits::Limits;
use crate::pairs::WordPair;
use crate::parse::{parse_ring_terms, parse_word};
use crate::special::{
    select_special_pair, CaseId, LevelRecord, Reordering, SolutionMap, SpecialPairCertificate,
    SpecialPairError, SurfaceRelation, SOURCE_RANK,
};

pub const CERT_HEADER: &str = "# concordia special-pair certificate v1";

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("certificate is internally inconsistent: {0}")]
    Inconsistent(String),
    #[error("re-derivation failed: {0}")]
    Derivation(#[from] SpecialPairError),
    #[error(
        "certificate does not match its re-derivation (first difference at line {line}): \
         expected {expected:?}, found {found:?}"
    )]
    Mismatch {
        line: usize,
        expected: String,
        found: String,
    },
}

impl SpecialPairCertificate {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(CERT_HEADER);
        out.push('\n');
        out.push_str(&format!("n = {}\n", self.n));
        out.push_str(&format!("target_rank = {}\n", self.target_rank));
        for (i, img) in self.images.iter().enumerate() {
            out.push_str(&format!("image x{} = {}\n", i + 1, img));
        }
        out.push_str(&format!("reordering = {}\n", self.reordering));
        out.push_str(&format!("base_pair = {}\n", self.base_pair));
        out.push_str(&format!("base_determinant = {}\n", self.base_determinant));
        for record in &self.levels {
            out.push_str(&format!(
                "level k={} case={} y_trivial={} z_trivial={}\n",
                record.k,
                record.case.number(),
                record.y_trivial,
                record.z_trivial
            ));
            out.push_str(&format!("pair = {}\n", record.pair));
            let evidence: Vec<String> = record.evidence.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("evidence = {}\n", evidence.join(" ; ")));
        }
        out.push_str(&format!("final_pair = {}\n", self.final_pair));
        out.push_str(&format!("relation = {}\n", self.relation.name()));
        out.push_str(&format!(
            "relation_coordinate = {}\n",
            self.relation_coordinate
        ));
        out.push_str(&format!(
            "relation_coordinate_nonzero = {}\n",
            self.relation_coordinate_nonzero
        ));
        out
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        Parser::new(text).parse()
    }
}

struct Parser<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, CertificateError> {
        Err(CertificateError::Malformed {
            line: self.pos + 1,
            message: message.into(),
        })
    }

    fn next_line(&mut self) -> Result<&'a str, CertificateError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l)
            }
            None => self.fail("unexpected end of certificate"),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    /// Consumes `key = value` and returns the value.
    fn field(&mut self, key: &str) -> Result<&'a str, CertificateError> {
        let line = self.next_line()?;
        let prefix = format!("{key} = ");
        match line.strip_prefix(&prefix) {
            Some(v) => Ok(v),
            None => {
                self.pos -= 1;
                self.fail(format!("expected field {key:?}"))
            }
        }
    }

    fn parse(mut self) -> Result<SpecialPairCertificate, CertificateError> {
        if self.next_line()? != CERT_HEADER {
            self.pos -= 1;
            return self.fail("missing certificate header");
        }
        let n: u32 = self
            .field("n")?
            .parse()
            .or_else(|_| self.fail("bad level count"))?;
        let target_rank: u32 = self
            .field("target_rank")?
            .parse()
            .or_else(|_| self.fail("bad target rank"))?;
        let mut images = Vec::new();
        for i in 1..=SOURCE_RANK {
            let v = self.field(&format!("image x{i}"))?;
            let w = parse_word(v, target_rank)
                .or_else(|e| self.fail(format!("bad image word: {e}")))?;
            images.push(w);
        }
        let reordering = Reordering::from_name(self.field("reordering")?)
            .map_or_else(|| self.fail("unknown reordering"), Ok)?;
        let base_pair_text = self.field("base_pair")?;
        let base_pair = self.parse_pair(base_pair_text, SOURCE_RANK)?;
        let base_det_text = self.field("base_determinant")?;
        let base_determinant = self.parse_ring(base_det_text, target_rank, Level::Finite(1))?;

        let mut levels = Vec::new();
        while let Some(line) = self.peek() {
            if !line.starts_with("level ") {
                break;
            }
            self.pos += 1;
            let rest = line.strip_prefix("level ").unwrap();
            let mut k = None;
            let mut case = None;
            let mut y_trivial = None;
            let mut z_trivial = None;
            for piece in rest.split_whitespace() {
                let Some((key, value)) = piece.split_once('=') else {
                    return self.fail("bad level line");
                };
                match key {
                    "k" => k = value.parse::<u32>().ok(),
                    "case" => case = value.parse::<u8>().ok().and_then(CaseId::from_number),
                    "y_trivial" => y_trivial = value.parse::<bool>().ok(),
                    "z_trivial" => z_trivial = value.parse::<bool>().ok(),
                    _ => return self.fail(format!("unknown level attribute {key:?}")),
                }
            }
            let (Some(k), Some(case), Some(y_trivial), Some(z_trivial)) =
                (k, case, y_trivial, z_trivial)
            else {
                return self.fail("incomplete level line");
            };
            let pair_text = self.field("pair")?;
            let pair = self.parse_pair(pair_text, SOURCE_RANK)?;
            let level = Level::Finite(k + 1);
            let evidence_text = self.field("evidence")?;
            let mut evidence = Vec::new();
            for part in evidence_text.split(" ; ") {
                evidence.push(self.parse_ring(part, target_rank, level)?);
            }
            levels.push(LevelRecord {
                k,
                pair,
                case,
                y_trivial,
                z_trivial,
                evidence,
            });
        }

        let final_pair_text = self.field("final_pair")?;
        let final_pair = self.parse_pair(final_pair_text, SOURCE_RANK)?;
        let relation = SurfaceRelation::from_name(self.field("relation")?)
            .map_or_else(|| self.fail("unknown relation variant"), Ok)?;
        let relation_text = self.field("relation_coordinate")?;
        let relation_coordinate = self.parse_ring(relation_text, target_rank, Level::Finite(n))?;
        let relation_coordinate_nonzero: bool = self
            .field("relation_coordinate_nonzero")?
            .parse()
            .or_else(|_| self.fail("bad boolean"))?;
        if self.peek().is_some() {
            return self.fail("trailing content after certificate");
        }
        Ok(SpecialPairCertificate {
            n,
            target_rank,
            images,
            reordering,
            base_pair,
            base_determinant,
            levels,
            final_pair,
            relation,
            relation_coordinate,
            relation_coordinate_nonzero,
        })
    }

    fn parse_pair(&self, text: &str, rank: u32) -> Result<WordPair, CertificateError> {
        let Some((y, z)) = text.split_once('\t') else {
            return Err(CertificateError::Malformed {
                line: self.pos,
                message: "pair must be tab-separated".into(),
            });
        };
        let y = parse_word(y, rank).map_err(|e| CertificateError::Malformed {
            line: self.pos,
            message: e.to_string(),
        })?;
        let z = parse_word(z, rank).map_err(|e| CertificateError::Malformed {
            line: self.pos,
            message: e.to_string(),
        })?;
        Ok(WordPair::new(y, z))
    }

    fn parse_ring(
        &self,
        text: &str,
        rank: u32,
        level: Level,
    ) -> Result<RingElem, CertificateError> {
        let terms = parse_ring_terms(text, rank).map_err(|e| CertificateError::Malformed {
            line: self.pos,
            message: e.to_string(),
        })?;
        let engine = FoxEngine::new(rank, Limits::from_env());
        engine
            .normalize(level, terms)
            .map_err(|e| CertificateError::Malformed {
                line: self.pos,
                message: e.to_string(),
            })
    }
}

/// Re-derives the certificate from its header data and demands an exact
/// byte match, then re-checks every evidence element nonzero at its
/// level. Any single-character corruption fails one of the two.
pub fn verify_certificate(text: &str, limits: Limits) -> Result<(), CertificateError> {
    let cert = SpecialPairCertificate::parse(text)?;
    let map = SolutionMap::new(cert.target_rank, cert.images.clone())
        .map_err(|e| CertificateError::Inconsistent(e.to_string()))?;
    let fresh = select_special_pair(&map, cert.n, limits)?;
    let expected = fresh.serialize();
    if expected != text {
        let found_lines: Vec<&str> = text.lines().collect();
        let expected_lines: Vec<&str> = expected.lines().collect();
        let line = expected_lines
            .iter()
            .zip(found_lines.iter())
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
            .unwrap_or_else(|| expected_lines.len().min(found_lines.len()) + 1);
        return Err(CertificateError::Mismatch {
            line,
            expected: expected_lines.get(line - 1).unwrap_or(&"<eof>").to_string(),
            found: found_lines.get(line - 1).unwrap_or(&"<eof>").to_string(),
        });
    }
    let target = FoxEngine::new(cert.target_rank, limits);
    for record in &cert.levels {
        for e in &record.evidence {
            let zero = target
                .ring_is_zero(e)
                .map_err(|e| CertificateError::Inconsistent(e.to_string()))?;
            if zero {
                return Err(CertificateError::Inconsistent(format!(
                    "evidence at level k={} vanishes",
                    record.k
                )));
            }
        }
    }
    Ok(())
}
