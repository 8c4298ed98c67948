use serde::{Deserialize, Serialize};

use super::CliError;
use crate::datum::{CocycleChoice, InputDatum};
use crate::epsilon::EpsilonKind;
use crate::folding_descent::{FoldingCase, GaloisAction};
use crate::intmat::IntMat;
use crate::lattice::{LatticeAut, RootLattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AutomorphismSpec {
    CoxeterPower { word: Vec<usize>, power: u64 },
    Word { word: Vec<usize> },
    Matrix { rows: Vec<Vec<i64>> },
    MinusIdentity,
}

impl AutomorphismSpec {
    pub fn build(&self, lattice: &RootLattice) -> Result<LatticeAut, CliError> {
        Ok(match self {
            AutomorphismSpec::CoxeterPower { word, power } => LatticeAut::coxeter_power(lattice, word, *power)?,
            AutomorphismSpec::Word { word } => LatticeAut::from_word(lattice, word)?,
            AutomorphismSpec::Matrix { rows } => LatticeAut::from_matrix(lattice, IntMat::from_rows(rows))?,
            AutomorphismSpec::MinusIdentity => LatticeAut::minus_identity(lattice),
        })
    }

    /// The reflection word of a Coxeter element given as a word or as its first power.
    fn coxeter_word(&self) -> Option<&[usize]> {
        match self {
            AutomorphismSpec::Word { word } | AutomorphismSpec::CoxeterPower { word, power: 1 } => Some(word),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldSpec {
    /// `ϑ(α_i) = α_{diagram[i-1]}`.
    pub diagram: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescendSpec {
    pub sigma: AutomorphismSpec,
    pub galois: i64,
    /// Phase of `σ` on `H` by class index; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    #[serde(default = "one")]
    pub central: u64,
    #[serde(default)]
    pub twist: Vec<i64>,
}

impl Default for RepSpec {
    fn default() -> Self {
        RepSpec { central: 1, twist: Vec::new() }
    }
}

fn one() -> u64 {
    1
}

fn default_epsilon() -> EpsilonKind {
    EpsilonKind::EpsW
}

fn default_cocycle() -> CocycleChoice {
    CocycleChoice::Snf
}

/// A datum specification file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lattice: String,
    pub automorphism: AutomorphismSpec,
    #[serde(default = "default_epsilon")]
    pub epsilon: EpsilonKind,
    #[serde(default = "default_cocycle")]
    pub cocycle: CocycleChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fold: Option<FoldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descend: Option<DescendSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<RepSpec>,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../cases/", $name, ".toml")))),*]
    };
}

/// Named cases shipped with the crate.
pub const CASES: &[(&str, &str)] = bundled!(
    "a1-minus1",
    "a2-coxeter",
    "a3-coxeter",
    "d4-coxeter",
    "d4-minus1",
    "e8-d2",
    "e8-d3",
    "e8-d5",
    "fold-A3C2",
    "fold-D5B4",
    "fold-D4G2",
    "fold-E6F4",
    "descend-G2Q",
);

pub fn case_names() -> Vec<&'static str> {
    CASES.iter().map(|(n, _)| *n).collect()
}

/// Accepts `e8-d5`, `fold:D4G2`, `D4G2`, `descend:G2Q` and similar spellings.
pub fn bundled_case(name: &str) -> Option<&'static str> {
    let norm = name.replace(':', "-");
    [norm.clone(), format!("fold-{norm}"), format!("descend-{norm}")]
        .iter()
        .find_map(|n| CASES.iter().find(|(c, _)| c == n).map(|(_, s)| *s))
}

impl DatumSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Spec(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn from_case(name: &str) -> Result<Self, CliError> {
        let text = bundled_case(name).ok_or_else(|| CliError::UnknownCase(name.to_string()))?;
        Self::parse(text)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.lattice.clone())
    }

    pub fn lattice(&self) -> Result<RootLattice, CliError> {
        Ok(RootLattice::build(&self.lattice)?)
    }

    pub fn datum(&self) -> Result<InputDatum, CliError> {
        let lattice = self.lattice()?;
        let w = self.automorphism.build(&lattice)?;
        InputDatum::new(lattice, w, self.cocycle, self.epsilon).map_err(|e| CliError::Spec(e.to_string()))
    }

    pub fn folding_case(&self) -> Result<FoldingCase, CliError> {
        let fold = self.fold.as_ref().ok_or_else(|| CliError::Spec("missing [fold] section".into()))?;
        let word = self
            .automorphism
            .coxeter_word()
            .ok_or_else(|| CliError::Spec("folding needs a Coxeter word".into()))?;
        Ok(FoldingCase {
            lattice: self.lattice.clone(),
            word: word.to_vec(),
            theta: fold.diagram.clone(),
            expected: fold.expected.clone(),
        })
    }

    pub fn galois_action(&self, datum: &InputDatum) -> Result<GaloisAction, CliError> {
        let d = self.descend.as_ref().ok_or_else(|| CliError::Spec("missing [descend] section".into()))?;
        let sigma = d.sigma.build(datum.lattice())?;
        let n = datum.group().order();
        let f = d.phase.clone().unwrap_or_else(|| vec![0; n]);
        if f.len() != n {
            return Err(CliError::Spec(format!("descend.phase needs {n} entries")));
        }
        Ok(GaloisAction { sigma, s: d.galois, f })
    }
}
