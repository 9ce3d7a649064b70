//! Rectangular paste regions and the masks built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An axis-aligned rectangle: column origin `l`, row origin `u`, extent
/// `w` x `h` in pixels. Width and height are always at least 1; whether the
/// rectangle fits a given image is checked by [`Region::validate_for`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub l: u32,
    pub u: u32,
    pub w: u32,
    pub h: u32,
}

impl Region {
    pub fn new(l: u32, u: u32, w: u32, h: u32) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidParameter {
                name: "w",
                value: 0.0,
                expected: "at least 1 pixel",
            });
        }
        if h == 0 {
            return Err(Error::InvalidParameter {
                name: "h",
                value: 0.0,
                expected: "at least 1 pixel",
            });
        }
        Ok(Self { l, u, w, h })
    }

    /// Column one past the right edge.
    pub fn right(&self) -> u32 {
        self.l + self.w
    }

    /// Row one past the bottom edge.
    pub fn bottom(&self) -> u32 {
        self.u + self.h
    }

    pub fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        x >= self.l && x < self.right() && y >= self.u && y < self.bottom()
    }

    /// Checks the region lies fully inside a `width` x `height` image.
    pub fn validate_for(&self, width: u32, height: u32) -> Result<()> {
        let fits = self.w >= 1
            && self.h >= 1
            && self.l.checked_add(self.w).is_some_and(|r| r <= width)
            && self.u.checked_add(self.h).is_some_and(|b| b <= height);
        if fits {
            Ok(())
        } else {
            Err(Error::RegionOutOfBounds {
                region: *self,
                width,
                height,
            })
        }
    }
}

/// Binary mix mask over a `width` x `height` grid: 0 inside exactly one
/// rectangle, 1 everywhere else.
///
/// Stored as the rectangle plus the grid dimensions; the dense matrix is
/// materialized only on request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionMask {
    width: u32,
    height: u32,
    region: Region,
}

impl RegionMask {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// Cell value: 0 inside the region, 1 outside.
    pub fn value(&self, x: u32, y: u32) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        u8::from(!self.region.contains(x, y))
    }

    pub fn zero_count(&self) -> u64 {
        self.region.area()
    }

    /// Row-major dense {0,1} matrix.
    pub fn to_dense(&self) -> Vec<u8> {
        let mut cells = vec![1u8; self.width as usize * self.height as usize];
        for y in self.region.u..self.region.bottom() {
            let row = y as usize * self.width as usize;
            for x in self.region.l..self.region.right() {
                cells[row + x as usize] = 0;
            }
        }
        cells
    }
}

/// Builds the mix mask for `region` over a `width` x `height` grid.
pub fn mask_from_region(region: Region, width: u32, height: u32) -> Result<RegionMask> {
    region.validate_for(width, height)?;
    Ok(RegionMask {
        width,
        height,
        region,
    })
}

/// Dense per-pixel boolean mask (valid-pixel sets, edge maps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PixelMask {
    width: u32,
    height: u32,
    data: Vec<bool>,
}

impl PixelMask {
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        debug_assert!(x < self.width && y < self.height);
        self.data[y as usize * self.width as usize + x as usize]
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn count(&self) -> u64 {
        self.data.iter().filter(|&&b| b).count() as u64
    }

    /// Clears every cell outside `region` (evaluation crop).
    pub fn restrict_to_region(&self, region: Region) -> Result<PixelMask> {
        region.validate_for(self.width, self.height)?;
        Ok(PixelMask::from_fn(self.width, self.height, |x, y| {
            self.get(x, y) && region.contains(x, y)
        }))
    }

    /// 8-neighborhood dilation by one pixel.
    pub fn dilated(&self) -> PixelMask {
        PixelMask::from_fn(self.width, self.height, |x, y| {
            let x0 = x.saturating_sub(1);
            let y0 = y.saturating_sub(1);
            let x1 = (x + 1).min(self.width - 1);
            let y1 = (y + 1).min(self.height - 1);
            for ny in y0..=y1 {
                for nx in x0..=x1 {
                    if self.get(nx, ny) {
                        return true;
                    }
                }
            }
            false
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_cover_mask_is_all_zero() {
        let mask = mask_from_region(Region::new(0, 0, 4, 3).unwrap(), 4, 3).unwrap();
        assert!(mask.to_dense().iter().all(|&c| c == 0));
        assert_eq!(mask.zero_count(), 12);
    }

    #[test]
    fn minimal_region_zeroes_one_cell() {
        let mask = mask_from_region(Region::new(0, 0, 1, 1).unwrap(), 2, 2).unwrap();
        assert_eq!(mask.to_dense(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn column_region_on_2x2() {
        // region (l=1, u=0, w=1, h=2): zeros at column 1, both rows
        let mask = mask_from_region(Region::new(1, 0, 1, 2).unwrap(), 2, 2).unwrap();
        assert_eq!(mask.to_dense(), vec![1, 0, 1, 0]);
        assert_eq!(mask.value(0, 0), 1);
        assert_eq!(mask.value(1, 0), 0);
        assert_eq!(mask.value(1, 1), 0);
    }

    #[test]
    fn out_of_bounds_region_is_rejected() {
        let r = Region::new(1, 0, 2, 2).unwrap();
        assert!(matches!(
            mask_from_region(r, 2, 2),
            Err(Error::RegionOutOfBounds { .. })
        ));
    }

    #[test]
    fn zero_extent_region_is_rejected() {
        assert!(Region::new(0, 0, 0, 1).is_err());
        assert!(Region::new(0, 0, 1, 0).is_err());
    }

    #[test]
    fn restrict_to_region_drops_outside_cells() {
        let all = PixelMask::from_fn(4, 4, |_, _| true);
        let cropped = all
            .restrict_to_region(Region::new(1, 1, 2, 2).unwrap())
            .unwrap();
        assert_eq!(cropped.count(), 4);
        assert!(!cropped.get(0, 0));
        assert!(cropped.get(1, 1));
    }

    #[test]
    fn dilation_grows_by_one_ring() {
        let single = PixelMask::from_fn(5, 5, |x, y| x == 2 && y == 2);
        let grown = single.dilated();
        assert_eq!(grown.count(), 9);
        assert!(grown.get(1, 1) && grown.get(3, 3));
        assert!(!grown.get(0, 0));
    }
}
