//! JSON encoding. Every file is an envelope
//! `{"schema": 1, "field": "Fp", "p": 10007, "kind": ..., "data": ...}`
//! with scalars written as decimal strings (`"3/7"` over `Q`).

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cubics::TwistedCubic;
use crate::dual_quartic::{QuarticForm, TangentHyperplaneSample};
use crate::error::{Error, Result};
use crate::fibration::SectionTower;
use crate::field::{Field, FieldCtx, FieldKind};
use crate::group::MarkedFano;
use crate::linalg::Matrix;
use crate::proj::{ProjPoint, ProjSubspace};
use crate::symplectic::{Geometry, SigmaPoint, SymplecticFrame, NW};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub kind: String,
    pub data: serde_json::Value,
}

pub type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawPoint {
    pub lagrangian: RawMatrix,
    pub plucker: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawCubic {
    pub frame: RawMatrix,
    #[serde(rename = "B")]
    pub b: RawMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawTower {
    pub p9: RawMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p10: Option<RawMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawQuartic {
    pub nvars: usize,
    pub order: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMark {
    pub h: Vec<String>,
    pub tangency: RawPoint,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawFano {
    pub tower: RawTower,
    pub c0: RawCubic,
    pub marks: Vec<RawMark>,
}

/// Values with a JSON form.
pub trait Codec<F: Field>: Sized {
    const KIND: &'static str;
    type Raw: Serialize + DeserializeOwned;
    fn to_raw(&self) -> Self::Raw;
    fn from_raw(geo: &Geometry<F>, raw: Self::Raw) -> Result<Self>;
}

pub fn field_header(kind: FieldKind) -> (String, Option<u64>) {
    match kind {
        FieldKind::Fp(p) => ("Fp".into(), Some(p)),
        FieldKind::Q => ("Q".into(), None),
    }
}

/// The field named by an envelope header.
pub fn field_of(text: &str) -> Result<FieldKind> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    kind_of(&env)
}

fn kind_of(env: &Envelope) -> Result<FieldKind> {
    if env.schema != SCHEMA {
        return Err(Error::SchemaMismatch(format!("found schema {}, expected {SCHEMA}", env.schema)));
    }
    match (env.field.as_str(), env.p) {
        ("Fp", Some(p)) => Ok(FieldKind::Fp(p)),
        ("Q", None) => Ok(FieldKind::Q),
        (f, p) => Err(Error::Parse(format!("bad field header {f:?} {p:?}"))),
    }
}

pub fn encode<F: Field, T: Codec<F>>(geo: &Geometry<F>, value: &T) -> String {
    let (field, p) = field_header(geo.ctx().kind());
    let env = Envelope {
        schema: SCHEMA,
        field,
        p,
        kind: T::KIND.into(),
        data: serde_json::to_value(value.to_raw()).expect("raw forms serialize"),
    };
    serde_json::to_string_pretty(&env).expect("envelope serializes")
}

pub fn decode<F: Field, T: Codec<F>>(geo: &Geometry<F>, text: &str) -> Result<T> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = kind_of(&env)?;
    if kind != geo.ctx().kind() {
        return Err(Error::FieldMismatch(format!("file is over {kind}, session is over {}", geo.ctx().kind())));
    }
    if env.kind != T::KIND {
        return Err(Error::SchemaMismatch(format!("found kind {:?}, expected {:?}", env.kind, T::KIND)));
    }
    let raw: T::Raw = serde_json::from_value(env.data).map_err(|e| Error::Parse(e.to_string()))?;
    T::from_raw(geo, raw)
}

pub fn vec_to_raw<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn vec_from_raw<F: Field>(ctx: &F::Ctx, v: &[String]) -> Result<Vec<F>> {
    v.iter().map(|s| ctx.parse(s)).collect()
}

pub fn matrix_to_raw<F: Field>(m: &Matrix<F>) -> RawMatrix {
    m.row_vecs().iter().map(|r| vec_to_raw(r)).collect()
}

pub fn matrix_from_raw<F: Field>(ctx: &F::Ctx, m: &RawMatrix, cols: usize) -> Result<Matrix<F>> {
    let rows = m
        .iter()
        .map(|r| if r.len() == cols { vec_from_raw(ctx, r) } else { Err(Error::WrongLength(r.len())) })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(ctx, cols, rows))
}

fn shape<F: Field>(m: Matrix<F>, rows: usize) -> Result<Matrix<F>> {
    if m.rows() != rows {
        return Err(Error::WrongLength(m.rows()));
    }
    Ok(m)
}

impl<F: Field> Codec<F> for Matrix<F> {
    const KIND: &'static str = "matrix";
    type Raw = RawMatrix;
    fn to_raw(&self) -> RawMatrix {
        matrix_to_raw(self)
    }
    fn from_raw(geo: &Geometry<F>, raw: RawMatrix) -> Result<Self> {
        let cols = raw.first().map_or(0, |r| r.len());
        matrix_from_raw(geo.ctx(), &raw, cols)
    }
}

impl<F: Field> Codec<F> for ProjPoint<F> {
    const KIND: &'static str = "point";
    type Raw = Vec<String>;
    fn to_raw(&self) -> Vec<String> {
        vec_to_raw(self.coords())
    }
    fn from_raw(geo: &Geometry<F>, raw: Vec<String>) -> Result<Self> {
        ProjPoint::new(vec_from_raw(geo.ctx(), &raw)?).ok_or(Error::Parse("zero vector".into()))
    }
}

/// A linear subspace of `P(W)` or `P(W*)` given by spanning rows.
impl<F: Field> Codec<F> for ProjSubspace<F> {
    const KIND: &'static str = "subspace";
    type Raw = RawMatrix;
    fn to_raw(&self) -> RawMatrix {
        matrix_to_raw(self.basis())
    }
    fn from_raw(geo: &Geometry<F>, raw: RawMatrix) -> Result<Self> {
        Ok(ProjSubspace::span(&matrix_from_raw(geo.ctx(), &raw, NW)?))
    }
}

impl<F: Field> Codec<F> for SigmaPoint<F> {
    const KIND: &'static str = "sigma-point";
    type Raw = RawPoint;
    fn to_raw(&self) -> RawPoint {
        RawPoint { lagrangian: matrix_to_raw(&self.lagrangian), plucker: vec_to_raw(self.w()) }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawPoint) -> Result<Self> {
        let l = shape(matrix_from_raw(geo.ctx(), &raw.lagrangian, 6)?, 3)?;
        if !geo.is_lagrangian(&l)? {
            return Err(Error::Parse("plane is not Lagrangian".into()));
        }
        let p = geo.sigma_point(&l);
        let w: Vec<F> = vec_from_raw(geo.ctx(), &raw.plucker)?;
        if ProjPoint::new(w) != Some(p.plucker.clone()) {
            return Err(Error::Parse("Plücker vector does not match the plane".into()));
        }
        Ok(p)
    }
}

impl<F: Field> Codec<F> for TwistedCubic<F> {
    const KIND: &'static str = "cubic";
    type Raw = RawCubic;
    fn to_raw(&self) -> RawCubic {
        RawCubic { frame: matrix_to_raw(self.frame().matrix()), b: matrix_to_raw(self.b()) }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawCubic) -> Result<Self> {
        let m = shape(matrix_from_raw(geo.ctx(), &raw.frame, 6)?, 6)?;
        if !geo.is_symplectic_basis(&m) {
            return Err(Error::Parse("frame is not symplectic".into()));
        }
        let b = shape(matrix_from_raw(geo.ctx(), &raw.b, 3)?, 3)?;
        TwistedCubic::new(geo, SymplecticFrame::from_matrix(m)?, b)
    }
}

impl<F: Field> Codec<F> for SectionTower<F> {
    const KIND: &'static str = "section";
    type Raw = RawTower;
    fn to_raw(&self) -> RawTower {
        RawTower { p9: matrix_to_raw(self.p9().basis()), p10: self.p10().map(|p| matrix_to_raw(p.basis())) }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawTower) -> Result<Self> {
        let p9 = ProjSubspace::span(&matrix_from_raw(geo.ctx(), &raw.p9, NW)?);
        let p10 = raw.p10.map(|m| matrix_from_raw(geo.ctx(), &m, NW).map(|m| ProjSubspace::span(&m))).transpose()?;
        SectionTower::new(p9, p10)
    }
}

impl<F: Field> Codec<F> for QuarticForm<F> {
    const KIND: &'static str = "quartic";
    type Raw = RawQuartic;
    fn to_raw(&self) -> RawQuartic {
        RawQuartic { nvars: self.nvars(), order: "grlex".into(), coeffs: vec_to_raw(self.coeffs()) }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawQuartic) -> Result<Self> {
        if raw.order != "grlex" {
            return Err(Error::SchemaMismatch(format!("monomial order {:?}", raw.order)));
        }
        QuarticForm::new(raw.nvars, vec_from_raw(geo.ctx(), &raw.coeffs)?)
    }
}

impl<F: Field> Codec<F> for TangentHyperplaneSample<F> {
    const KIND: &'static str = "tangent-hyperplane";
    type Raw = RawMark;
    fn to_raw(&self) -> RawMark {
        RawMark { h: vec_to_raw(self.h.coords()), tangency: self.tangency.to_raw() }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawMark) -> Result<Self> {
        let tangency = SigmaPoint::from_raw(geo, raw.tangency)?;
        let h = vec_from_raw(geo.ctx(), &raw.h)?;
        if h.len() != NW {
            return Err(Error::WrongLength(h.len()));
        }
        let tangent = geo.tangent_space(&tangency)?;
        if !tangent.basis().row_vecs().iter().all(|v| crate::linalg::dot(&h, v, geo.ctx()).is_zero()) {
            return Err(Error::Parse("hyperplane is not tangent at the recorded point".into()));
        }
        Ok(TangentHyperplaneSample { h: ProjPoint::new(h).ok_or(Error::Parse("zero covector".into()))?, tangency })
    }
}

impl<F: Field> Codec<F> for MarkedFano<F> {
    const KIND: &'static str = "marked-fano";
    type Raw = RawFano;
    fn to_raw(&self) -> RawFano {
        RawFano { tower: self.tower.to_raw(), c0: self.c0.to_raw(), marks: self.marks.iter().map(|m| m.to_raw()).collect() }
    }
    fn from_raw(geo: &Geometry<F>, raw: RawFano) -> Result<Self> {
        let tower = SectionTower::from_raw(geo, raw.tower)?;
        let c0 = TwistedCubic::from_raw(geo, raw.c0)?;
        let marks: Vec<_> = raw.marks.into_iter().map(|m| TangentHyperplaneSample::from_raw(geo, m)).collect::<Result<_>>()?;
        let marks: [TangentHyperplaneSample<F>; 3] = marks.try_into().map_err(|v: Vec<_>| Error::WrongLength(v.len()))?;
        MarkedFano::from_parts(tower, c0, marks)
    }
}

/// Unordered point triple, the data of a point of `Hilb₃`.
impl<F: Field> Codec<F> for [SigmaPoint<F>; 3] {
    const KIND: &'static str = "triple";
    type Raw = Vec<RawPoint>;
    fn to_raw(&self) -> Vec<RawPoint> {
        self.iter().map(|p| p.to_raw()).collect()
    }
    fn from_raw(geo: &Geometry<F>, raw: Vec<RawPoint>) -> Result<Self> {
        let pts: Vec<_> = raw.into_iter().map(|p| SigmaPoint::from_raw(geo, p)).collect::<Result<_>>()?;
        pts.try_into().map_err(|v: Vec<_>| Error::WrongLength(v.len()))
    }
}

/// The envelope's `kind` tag, after the schema and field checks.
pub fn kind_tag(text: &str) -> Result<String> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    kind_of(&env)?;
    Ok(env.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField, Rationals, Q};
    use crate::rng::rng_from_seed;

    #[test]
    fn cubic_and_point_round_trip() {
        let g: Geometry<Fp> = Geometry::new(&PrimeField::new(10007).unwrap());
        let mut rng = rng_from_seed(1);
        let (c, xi) = g.sample_cubic(&mut rng);
        let back: TwistedCubic<Fp> = decode(&g, &encode(&g, &c)).unwrap();
        assert!(back.equals(&c));
        let p: SigmaPoint<Fp> = decode(&g, &encode(&g, &xi[0])).unwrap();
        assert_eq!(p, xi[0]);
        assert!(decode::<Fp, SigmaPoint<Fp>>(&g, &encode(&g, &c)).is_err());
    }

    #[test]
    fn header_mismatches() {
        let g: Geometry<Fp> = Geometry::new(&PrimeField::new(10007).unwrap());
        let g11: Geometry<Fp> = Geometry::new(&PrimeField::new(11).unwrap());
        let mut rng = rng_from_seed(2);
        let p = g.sample_sigma(&mut rng);
        let text = encode(&g, &p);
        assert!(matches!(decode::<Fp, SigmaPoint<Fp>>(&g11, &text), Err(Error::FieldMismatch(_))));
        let bumped = text.replace("\"schema\": 1", "\"schema\": 2");
        assert!(matches!(decode::<Fp, SigmaPoint<Fp>>(&g, &bumped), Err(Error::SchemaMismatch(_))));
        assert_eq!(field_of(&text).unwrap(), FieldKind::Fp(10007));
    }

    #[test]
    fn rational_scalars_are_fractions() {
        let g: Geometry<Q> = Geometry::new(&Rationals);
        let k = Rationals;
        let pt = ProjPoint::new(vec![Q::from_ints(3, 7), k.one()]).unwrap();
        let text = encode(&g, &pt);
        assert!(text.contains("\"field\": \"Q\""));
        let back: ProjPoint<Q> = decode(&g, &text).unwrap();
        assert_eq!(back, pt);
    }
}
