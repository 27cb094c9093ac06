//! Resolution of design sources, marked sets and coupling policies from
//! command-line values.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use designwalk::design::{
    fano, gen_complete, gen_paley_design, gen_projective_plane, load_incidence, to_bipartite,
    BipartiteGraph, IncidenceStructure, Part,
};
use designwalk::marking::{classify, find_biregular, make_same_part, MarkedConfig};
use designwalk::predictor::{predict, SearchPrediction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignSource {
    ProjectivePlane(u64),
    Paley(u64),
    Fano,
    Complete(u64),
    File(PathBuf),
}

impl FromStr for DesignSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let param = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| format!("expected an integer parameter in {s:?}"))
        };
        Ok(match s.split_once(':') {
            Some(("pg", p)) => DesignSource::ProjectivePlane(param(p)?),
            Some(("paley", p)) => DesignSource::Paley(param(p)?),
            Some(("complete", p)) => DesignSource::Complete(param(p)?),
            _ if s == "fano" => DesignSource::Fano,
            _ => DesignSource::File(PathBuf::from(s)),
        })
    }
}

impl fmt::Display for DesignSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignSource::ProjectivePlane(q) => write!(f, "pg:{q}"),
            DesignSource::Paley(q) => write!(f, "paley:{q}"),
            DesignSource::Fano => f.write_str("fano"),
            DesignSource::Complete(v) => write!(f, "complete:{v}"),
            DesignSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl DesignSource {
    pub fn load(&self) -> Result<IncidenceStructure> {
        Ok(match self {
            DesignSource::ProjectivePlane(q) => gen_projective_plane(*q)?,
            DesignSource::Paley(q) => gen_paley_design(*q)?,
            DesignSource::Fano => fano(),
            DesignSource::Complete(v) => gen_complete(*v)?,
            DesignSource::File(p) => {
                load_incidence(p).with_context(|| format!("reading {}", p.display()))?
            }
        })
    }

    pub fn from_family(family: Family, param: u64) -> Self {
        match family {
            Family::Pg => DesignSource::ProjectivePlane(param),
            Family::Paley => DesignSource::Paley(param),
            Family::Complete => DesignSource::Complete(param),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// Projective plane PG(2, q), q prime.
    Pg,
    /// Quadratic-residue design, q prime and q ≡ 3 (mod 4).
    Paley,
    /// Every block is the whole point set.
    Complete,
}

/// `--gamma auto|published|<float>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaPolicy {
    Auto,
    Published,
    Fixed(f64),
}

impl FromStr for GammaPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(GammaPolicy::Auto),
            "published" => Ok(GammaPolicy::Published),
            _ => match s.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => Ok(GammaPolicy::Fixed(x)),
                _ => Err(format!("expected auto, published or a non-negative number, got {s:?}")),
            },
        }
    }
}

impl fmt::Display for GammaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaPolicy::Auto => f.write_str("auto"),
            GammaPolicy::Published => f.write_str("published"),
            GammaPolicy::Fixed(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PairArg {
    Adjacent,
    Cross,
    Same,
}

/// Marked-set descriptor. With none of the options, vertex 0 is marked.
#[derive(Debug, Clone, Args)]
#[group(multiple = false)]
pub struct MarkedArgs {
    /// Explicit vertex ids, points `0..v` then blocks `v..2v`.
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    pub marked: Option<Vec<usize>>,
    /// `m` lowest-indexed vertices of one part, e.g. `4:POINT`.
    #[arg(long, value_name = "M:PART")]
    pub same_part: Option<String>,
    /// `m` vertices per part inducing a `d`-regular subgraph, e.g. `3,1`.
    #[arg(long, value_name = "M,D", value_delimiter = ',', num_args = 2)]
    pub biregular: Option<Vec<usize>>,
    /// Vertex 0 together with a second vertex in the given relation.
    #[arg(long, value_enum)]
    pub pair: Option<PairArg>,
}

impl MarkedArgs {
    pub fn describe(&self) -> String {
        if let Some(w) = &self.marked {
            format!("marked {w:?}")
        } else if let Some(s) = &self.same_part {
            format!("same-part {s}")
        } else if let Some(b) = &self.biregular {
            format!("biregular {b:?}")
        } else if let Some(p) = &self.pair {
            format!("pair {p:?}").to_lowercase()
        } else {
            "single vertex 0".into()
        }
    }

    pub fn resolve(&self, g: &BipartiteGraph, seed: u64) -> Result<MarkedConfig> {
        if let Some(w) = &self.marked {
            return Ok(classify(g, w)?);
        }
        if let Some(spec) = &self.same_part {
            let (m, part) = spec
                .split_once(':')
                .ok_or_else(|| anyhow!("--same-part expects M:PART, got {spec:?}"))?;
            let m: usize = m.parse().with_context(|| format!("bad count in {spec:?}"))?;
            let part = match part.to_ascii_uppercase().as_str() {
                "POINT" => Part::Point,
                "BLOCK" => Part::Block,
                other => bail!("part must be POINT or BLOCK, got {other:?}"),
            };
            return Ok(make_same_part(g, m, part)?);
        }
        if let Some(md) = &self.biregular {
            return Ok(find_biregular(g, md[0], md[1], seed)?);
        }
        let w = match self.pair {
            None => vec![0],
            Some(PairArg::Same) => vec![0, 1],
            Some(PairArg::Adjacent) => vec![0, g.neighbors(0)[0]],
            Some(PairArg::Cross) => {
                let b = g
                    .part_vertices(Part::Block)
                    .find(|&b| !g.is_adjacent(0, b))
                    .ok_or_else(|| anyhow!("every block contains point 0"))?;
                vec![0, b]
            }
        };
        Ok(classify(g, &w)?)
    }
}

/// A loaded design with its marked configuration and prediction.
pub struct Experiment {
    pub inc: IncidenceStructure,
    pub graph: BipartiteGraph,
    pub config: MarkedConfig,
    pub prediction: Option<SearchPrediction>,
    /// Why no prediction is available, if so.
    pub prediction_error: Option<String>,
}

impl Experiment {
    pub fn new(source: &DesignSource, marked: &MarkedArgs, seed: u64) -> Result<Self> {
        let inc = source.load()?;
        let graph = to_bipartite(&inc);
        let config = marked.resolve(&graph, seed)?;
        let (prediction, prediction_error) = match predict(&inc, &config) {
            Ok(p) => (Some(p), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Ok(Experiment {
            inc,
            graph,
            config,
            prediction,
            prediction_error,
        })
    }

    fn need_prediction(&self, why: &str) -> Result<&SearchPrediction> {
        self.prediction.as_ref().ok_or_else(|| {
            anyhow!(
                "{why} needs a closed-form prediction, but {}: {}",
                self.config.kind.label(),
                self.prediction_error.as_deref().unwrap_or("unavailable")
            )
        })
    }

    /// The coupling and a matching predicted optimal time, if any.
    pub fn gamma(&self, policy: GammaPolicy) -> Result<(f64, Option<f64>, &'static str)> {
        match policy {
            GammaPolicy::Fixed(x) => Ok((x, self.prediction.as_ref().map(|p| p.t_opt), "explicit")),
            GammaPolicy::Auto => {
                let p = self.need_prediction("--gamma auto")?;
                Ok((p.gamma, Some(p.t_opt), "row-sum (auto)"))
            }
            GammaPolicy::Published => {
                let p = self.need_prediction("--gamma published")?;
                let publ = p
                    .published
                    .ok_or_else(|| anyhow!("no quoted closed form for this design"))?;
                Ok((publ.gamma, Some(publ.t_opt), "published"))
            }
        }
    }
}
