use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Mathematical rejections (a
/// degenerate map, a boundary point, an excluded family parameter) are
/// ordinary values of this type, never panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate map: the resultant vanishes")]
    DegenerateMap,
    #[error("singular Mobius transformation")]
    SingularMobius,
    #[error("points are not pairwise distinct")]
    RepeatedPoint,
    #[error("no quadratic map realizes this cycle: {0}")]
    NoRealizingMap(String),
    #[error("period divides {0} properly")]
    ProperPeriod(usize),
    #[error("boundary of birational action: {0}")]
    BirationalBoundary(String),
    #[error("outside chart: {0}")]
    OutsideChart(String),
    #[error("not a point of the quintic surface")]
    NotOnSurface,
    #[error("boundary point: {0}")]
    BoundaryPoint(String),
    #[error("parameter excluded: {0}")]
    ExcludedParameter(String),
    #[error("invalid model point: {0}")]
    InvalidModel(String),
    #[error("search height {0} outside the supported range 1..=10000000")]
    HeightOutOfRange(u64),
}

impl Error {
    /// Stable machine-readable tag used in structured CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::ZeroPoint => "zero-point",
            Error::Dimension { .. } => "dimension",
            Error::MissingVariable(_) => "missing-variable",
            Error::Parse(_) => "parse",
            Error::DegenerateMap => "degenerate-map",
            Error::SingularMobius => "singular-mobius",
            Error::RepeatedPoint => "repeated-point",
            Error::NoRealizingMap(_) => "no-realizing-map",
            Error::ProperPeriod(_) => "proper-period",
            Error::BirationalBoundary(_) => "birational-boundary",
            Error::OutsideChart(_) => "outside-chart",
            Error::NotOnSurface => "not-on-surface",
            Error::BoundaryPoint(_) => "boundary-point",
            Error::ExcludedParameter(_) => "excluded-parameter",
            Error::InvalidModel(_) => "invalid-model",
            Error::HeightOutOfRange(_) => "height-out-of-range",
        }
    }
}
