//! Boundary-condition and range flags, validated into library types.

use abflux::{BoundaryCondition, BoundarySpec64, Complex, RescaledBC};
use clap::Args;
use serde_json::{json, Value};

use crate::emit::num;
use crate::CliError;

/// Exactly one chart may be given. Within the chosen chart, omitted
/// components default to zero.
#[derive(Debug, Clone, Default, Args)]
pub struct BcArgs {
    /// Λ chart: diagonal entry u.
    #[arg(long)]
    pub u: Option<f64>,
    /// Λ chart: diagonal entry v.
    #[arg(long)]
    pub v: Option<f64>,
    /// Λ chart: real part of the off-diagonal entry w.
    #[arg(long = "w-re")]
    pub w_re: Option<f64>,
    /// Λ chart: imaginary part of the off-diagonal entry w.
    #[arg(long = "w-im")]
    pub w_im: Option<f64>,
    /// Rescaled chart: ξ.
    #[arg(long)]
    pub xi: Option<f64>,
    /// Rescaled chart: η.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Rescaled chart: ζ >= 0.
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Distinguished extension outside the Λ chart; only `inf` is accepted.
    #[arg(long)]
    pub bc: Option<String>,
}

impl BcArgs {
    pub fn boundary(&self) -> Result<BoundarySpec64, CliError> {
        let lambda_chart = [self.u, self.v, self.w_re, self.w_im].iter().any(Option::is_some);
        let rescaled_chart = [self.xi, self.eta, self.zeta].iter().any(Option::is_some);
        let named = self.bc.is_some();
        match (lambda_chart, rescaled_chart, named) {
            (true, false, false) => {
                let w = Complex::new(self.w_re.unwrap_or(0.0), self.w_im.unwrap_or(0.0));
                Ok(BoundarySpec64::Lambda(BoundaryCondition::new(self.u.unwrap_or(0.0), self.v.unwrap_or(0.0), w)))
            }
            (false, true, false) => {
                let rbc = RescaledBC::new(self.xi.unwrap_or(0.0), self.eta.unwrap_or(0.0), self.zeta.unwrap_or(0.0))
                    .map_err(|e| CliError::Config(e.to_string()))?;
                Ok(BoundarySpec64::Rescaled(rbc))
            }
            (false, false, true) => match self.bc.as_deref() {
                Some("inf") => Ok(BoundarySpec64::Infinity),
                Some(other) => Err(CliError::Config(format!("--bc accepts only 'inf', got '{other}'"))),
                None => unreachable!("named chart requires --bc"),
            },
            (false, false, false) => {
                Err(CliError::Config("give one boundary condition: --u/--v/--w-re/--w-im, --xi/--eta/--zeta or --bc inf".into()))
            }
            _ => Err(CliError::Config("boundary flags from more than one of (u,v,w), (xi,eta,zeta), --bc were given".into())),
        }
    }
}

pub fn boundary_json(spec: &BoundarySpec64) -> Value {
    match spec {
        BoundarySpec64::Lambda(bc) => {
            json!({"kind": "lambda", "u": num(bc.u), "v": num(bc.v), "w_re": num(bc.w.re), "w_im": num(bc.w.im)})
        }
        BoundarySpec64::Rescaled(r) => json!({"kind": "rescaled", "xi": num(r.xi), "eta": num(r.eta), "zeta": num(r.zeta)}),
        BoundarySpec64::Infinity => json!({"kind": "inf"}),
    }
}

/// `lo:hi:n`
pub fn parse_t_range(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected lo:hi:n, got '{s}'"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    let n = n.trim().parse::<usize>().map_err(|e| format!("'{n}': {e}"))?;
    Ok((num(lo)?, num(hi)?, n))
}

/// `a,b,c`
pub fn parse_direction(s: &str) -> Result<(f64, f64, f64), String> {
    let v: Vec<f64> =
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"))).collect::<Result<_, _>>()?;
    let [a, b, c] = v[..] else {
        return Err(format!("expected three comma-separated numbers, got '{s}'"));
    };
    Ok((a, b, c))
}
