//! Bundled signatures.
//!
//! Constant names use ASCII: `nat_beta_z` for the zero case of the
//! recursor, `u_bar`/`nat_bar`/`pi_bar`/`eq_bar` for universe codes, and
//! `cum` for the cumulativity map. Layered signatures are built by
//! concatenating files in order.

use crate::kernel::{CheckConfig, Kernel, KernelError, RuleKind, Signature};
use crate::parse::{parse_signature_in, to_telescope, ParseError};
use crate::syntax::Telescope;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Embedded file contents by file name.
pub const FILES: &[(&str, &str)] = &[
    ("godel_t.eqlf", include_str!("../stdsigs/godel_t.eqlf")),
    ("dependent_t.eqlf", include_str!("../stdsigs/dependent_t.eqlf")),
    ("eq_type.eqlf", include_str!("../stdsigs/eq_type.eqlf")),
    ("id_type.eqlf", include_str!("../stdsigs/id_type.eqlf")),
    ("universes.eqlf", include_str!("../stdsigs/universes.eqlf")),
    ("sigma_neg.eqlf", include_str!("../stdsigs/sigma_neg.eqlf")),
    ("sigma_pos.eqlf", include_str!("../stdsigs/sigma_pos.eqlf")),
    ("arith.eqlf", include_str!("../stdsigs/arith.eqlf")),
];

pub fn file_source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusId {
    GodelT,
    DependentT,
    EqType,
    IdType,
    Universes,
    SigmaNeg,
    SigmaPos,
}

impl CorpusId {
    pub const ALL: [CorpusId; 7] = [
        CorpusId::GodelT,
        CorpusId::DependentT,
        CorpusId::EqType,
        CorpusId::IdType,
        CorpusId::Universes,
        CorpusId::SigmaNeg,
        CorpusId::SigmaPos,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorpusId::GodelT => "godel_t",
            CorpusId::DependentT => "dependent_t",
            CorpusId::EqType => "eq_type",
            CorpusId::IdType => "id_type",
            CorpusId::Universes => "universes",
            CorpusId::SigmaNeg => "sigma_neg",
            CorpusId::SigmaPos => "sigma_pos",
        }
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown corpus signature `{0}`")]
pub struct UnknownCorpusId(pub String);

impl FromStr for CorpusId {
    type Err = UnknownCorpusId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.strip_suffix(".eqlf").unwrap_or(s);
        CorpusId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownCorpusId(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: CorpusId,
    /// The entry's own file.
    pub file: &'static str,
    /// Files concatenated to form the signature, the entry's own file last.
    pub layers: &'static [&'static str],
    pub expected_reductions: usize,
    pub expected_expansions: usize,
    pub description: &'static str,
}

impl CorpusEntry {
    pub fn file_path(&self) -> String {
        format!("stdsigs/{}", self.file)
    }

    pub fn expected_rule_count(&self) -> usize {
        self.expected_reductions + self.expected_expansions
    }

    pub fn source(&self) -> String {
        self.layers
            .iter()
            .map(|f| file_source(f).expect("bundled file"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Stable order.
pub fn corpus() -> Vec<CorpusEntry> {
    CorpusId::ALL.into_iter().map(entry).collect()
}

pub fn entry(id: CorpusId) -> CorpusEntry {
    let (file, layers, red, exp, description): (_, &'static [&'static str], _, _, _) = match id {
        CorpusId::GodelT => (
            "godel_t.eqlf",
            &["godel_t.eqlf"],
            3,
            1,
            "Goedel's T: nat, simple functions, recursor, beta and eta",
        ),
        CorpusId::DependentT => (
            "dependent_t.eqlf",
            &["dependent_t.eqlf"],
            3,
            1,
            "dependent functions and a recursor into type families",
        ),
        CorpusId::EqType => (
            "eq_type.eqlf",
            &["dependent_t.eqlf", "eq_type.eqlf"],
            3,
            1,
            "extensional equality type with reflection and unicity",
        ),
        CorpusId::IdType => (
            "id_type.eqlf",
            &["dependent_t.eqlf", "id_type.eqlf"],
            4,
            1,
            "intensional identity type with the J eliminator",
        ),
        CorpusId::Universes => (
            "universes.eqlf",
            &["dependent_t.eqlf", "eq_type.eqlf", "universes.eqlf"],
            8,
            1,
            "cumulative Tarskian universes over levels",
        ),
        CorpusId::SigmaNeg => (
            "sigma_neg.eqlf",
            &["dependent_t.eqlf", "sigma_neg.eqlf"],
            5,
            2,
            "dependent sums with projections",
        ),
        CorpusId::SigmaPos => (
            "sigma_pos.eqlf",
            &["dependent_t.eqlf", "sigma_pos.eqlf"],
            5,
            1,
            "dependent sums with a split eliminator",
        ),
    };
    CorpusEntry {
        id,
        file,
        layers,
        expected_reductions: red,
        expected_expansions: exp,
        description,
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Parses the layered files of `id`.
pub fn parse(id: CorpusId) -> Result<Telescope, ParseError> {
    let mut t = Telescope::new();
    for f in entry(id).layers {
        let decls = parse_signature_in(file_source(f).expect("bundled file"), Some(f))?;
        t = t.concat(&to_telescope(&decls));
    }
    Ok(t)
}

/// Parsed and checked declarations. Bundled files are checked by the
/// test suite, so failure here is a bug.
pub fn load(id: CorpusId) -> Telescope {
    signature(id).expect("bundled signature checks").telescope()
}

pub fn signature(id: CorpusId) -> Result<Signature, LoadError> {
    Ok(Signature::check(&parse(id)?, CheckConfig::default())?)
}

pub fn kernel(id: CorpusId) -> Kernel {
    Kernel::new(signature(id).expect("bundled signature checks"), CheckConfig::default())
}

/// Reduction and expansion counts of a checked signature.
pub fn rule_counts(sig: &Signature) -> (usize, usize) {
    (sig.rule_count(RuleKind::Reduction), sig.rule_count(RuleKind::Expansion))
}
