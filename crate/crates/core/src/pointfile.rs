//! JSON point-set files: coordinates plus the field and form needed to read
//! them without the producing program.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::forms::FormRecord;
use crate::gf::{Elem, FieldSpec};
use crate::polar::PolarSpace;
use crate::verify::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    /// W(2n+1, q) with the anti-diagonal form.
    Standard,
    /// The polar space of `J_0` from the pencil construction.
    Pencil,
    /// W(5, q) induced on the Baer subgeometry, in Σ-coordinates.
    Glued,
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(SpaceKind::Standard),
            "pencil" => Ok(SpaceKind::Pencil),
            "glued" => Ok(SpaceKind::Glued),
            other => Err(Error::Usage(format!(
                "unknown space {other:?}; expected standard, pencil or glued"
            ))),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Standard => "standard",
            SpaceKind::Pencil => "pencil",
            SpaceKind::Glued => "glued",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFile {
    pub space: SpaceKind,
    pub q: u32,
    pub n: usize,
    pub field: FieldSpec,
    pub form: FormRecord,
    /// One coordinate vector per point, normalized, in index order.
    pub points: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Value>,
}

impl PointFile {
    pub fn new(kind: SpaceKind, space: &PolarSpace, set: &PointSet) -> Self {
        let ps = space.space();
        PointFile {
            space: kind,
            q: space.q(),
            n: space.n(),
            field: ps.field().spec(),
            form: FormRecord::from(space.form()),
            points: set
                .members()
                .iter()
                .map(|&p| ps.point(p).to_vec())
                .collect(),
            manifest: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Reads the points into `space`, which must carry the same field and
    /// form. Coordinates may be any non-zero multiple of a point; repeated
    /// points are rejected.
    pub fn to_point_set(&self, space: &PolarSpace) -> Result<PointSet> {
        let ps = space.space();
        if self.q != space.q() || self.n != space.n() {
            return Err(Error::Usage(format!(
                "file describes W({}, {}), target is W({}, {})",
                2 * self.n + 1,
                self.q,
                2 * space.n() + 1,
                space.q()
            )));
        }
        if self.field != ps.field().spec() {
            return Err(Error::Usage(format!(
                "file field {:?} differs from {:?}",
                self.field,
                ps.field().spec()
            )));
        }
        if self.form.to_bilinear()? != *space.form() {
            return Err(Error::Usage(
                "file form differs from the target space's form".into(),
            ));
        }
        let members = self
            .points
            .iter()
            .map(|v| {
                ps.index_of(v)
                    .ok_or_else(|| Error::Usage(format!("{v:?} is not a point of {ps:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(members, ps.num_points())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_rescaling() {
        let w = PolarSpace::standard(1, 4).unwrap();
        let set = PointSet::new(vec![0, 7, 30], w.num_points()).unwrap();
        let file = PointFile::new(SpaceKind::Standard, &w, &set);
        let back = PointFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_point_set(&w).unwrap(), set);

        let mut scaled = file.clone();
        let f = w.space().field();
        scaled.points[1] = scaled.points[1].iter().map(|&c| f.mul(c, 3)).collect();
        assert_eq!(scaled.to_point_set(&w).unwrap(), set);

        let mut dup = file.clone();
        dup.points.push(scaled.points[1].clone());
        assert!(dup.to_point_set(&w).is_err());

        let other = PolarSpace::standard(1, 2).unwrap();
        assert!(file.to_point_set(&other).is_err());
        assert!("nonsense".parse::<SpaceKind>().is_err());
        assert_eq!("glued".parse::<SpaceKind>().unwrap().to_string(), "glued");
    }
}
