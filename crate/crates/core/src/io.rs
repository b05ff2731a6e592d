//! JSON input files: subshift sources and group chains.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use crate::construct::{derive_spec, Construction, FiniteGroup, GroupChain};
use crate::error::{Error, Result};
use crate::lang::{Alphabet, SubshiftSource, Word};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SourceFile {
    Sft {
        alphabet: Vec<String>,
        #[serde(default)]
        forbidden: Vec<String>,
    },
    Substitution {
        #[serde(default)]
        alphabet: Option<Vec<String>>,
        rules: BTreeMap<String, String>,
        seed: String,
        #[serde(default)]
        max_iterations: Option<usize>,
    },
    Seeds {
        alphabet: Vec<String>,
        seeds: Vec<String>,
    },
    Construction {
        spec: PathBuf,
        level: usize,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: String,
    cayley: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    groups: Vec<GroupFile>,
    embeddings: Vec<Vec<usize>>,
    #[serde(default)]
    b: Vec<usize>,
}

/// A group chain together with its repetition parameters `b_2, b_3, ...`.
#[derive(Debug, Clone)]
pub struct ChainInput {
    pub chain: GroupChain,
    pub b: Vec<usize>,
}

impl ChainInput {
    pub fn construction(&self) -> Result<Construction> {
        Construction::new(derive_spec(&self.chain, &self.b)?)
    }
}

fn invalid(e: serde_json::Error) -> Error {
    Error::InvalidSource(e.to_string())
}

pub fn parse_chain(text: &str) -> Result<ChainInput> {
    let file: ChainFile = serde_json::from_str(text).map_err(|e| Error::InvalidChain(e.to_string()))?;
    let groups = file.groups.into_iter().map(|g| FiniteGroup::new(g.name, g.cayley)).collect();
    Ok(ChainInput { chain: GroupChain::new(groups, file.embeddings), b: file.b })
}

pub fn read_chain(path: &Path) -> Result<ChainInput> {
    parse_chain(&fs::read_to_string(path)?)
}

/// Parses a source document. Relative construction paths resolve against `base`.
pub fn parse_source(text: &str, base: &Path) -> Result<SubshiftSource> {
    let file: SourceFile = serde_json::from_str(text).map_err(invalid)?;
    match file {
        SourceFile::Sft { alphabet, forbidden } => {
            let alphabet = Alphabet::new(alphabet)?;
            let forbidden = parse_words(&alphabet, &forbidden)?;
            SubshiftSource::sft(alphabet, forbidden)
        }
        SourceFile::Substitution { alphabet, rules, seed, max_iterations } => {
            let alphabet = Alphabet::new(alphabet.unwrap_or_else(|| rules.keys().cloned().collect()))?;
            if rules.len() != alphabet.len() {
                return Err(Error::InvalidSource(format!(
                    "{} rules for an alphabet of {} symbols",
                    rules.len(),
                    alphabet.len()
                )));
            }
            let images = alphabet
                .names()
                .iter()
                .map(|name| {
                    let image = rules
                        .get(name)
                        .ok_or_else(|| Error::InvalidSource(format!("no rule for symbol {name:?}")))?;
                    alphabet.parse_word(image)
                })
                .collect::<Result<Vec<_>>>()?;
            let seed = alphabet
                .index_of(&seed)
                .ok_or_else(|| Error::InvalidSource(format!("seed {seed:?} is not a single alphabet symbol")))?;
            let source = SubshiftSource::substitution(alphabet, images, seed)?;
            Ok(match max_iterations {
                Some(cap) => source.with_max_iterations(cap),
                None => source,
            })
        }
        SourceFile::Seeds { alphabet, seeds } => {
            let alphabet = Alphabet::new(alphabet)?;
            let seeds = parse_words(&alphabet, &seeds)?;
            SubshiftSource::seeds(alphabet, seeds)
        }
        SourceFile::Construction { spec, level } => {
            let path = if spec.is_relative() { base.join(spec) } else { spec };
            let chain = read_chain(&path)?;
            SubshiftSource::construction(Arc::new(chain.construction()?), level)
        }
    }
}

pub fn read_source(path: &Path) -> Result<SubshiftSource> {
    let text = fs::read_to_string(path)?;
    parse_source(&text, path.parent().unwrap_or(Path::new(".")))
}

fn parse_words(alphabet: &Alphabet, words: &[String]) -> Result<Vec<Word>> {
    words.iter().map(|w| alphabet.parse_word(w)).collect()
}
