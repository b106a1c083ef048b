//! Built-in example bodies.

use crate::io::{parse_config, BodyConfig};

#[derive(Debug, Clone, Copy)]
pub struct GalleryEntry {
    pub name: &'static str,
    /// Readable form of `a(φ, θ)`.
    pub formula: &'static str,
    /// Reference minimal radius, where one exists.
    pub reference_r0: Option<f64>,
    pub json: &'static str,
}

impl GalleryEntry {
    pub fn config(&self) -> BodyConfig {
        parse_config(self.json).expect("gallery configs are valid")
    }
}

pub const ENTRIES: &[GalleryEntry] = &[
    GalleryEntry {
        name: "sphere",
        formula: "0",
        reference_r0: None,
        json: include_str!("../gallery/sphere.json"),
    },
    GalleryEntry {
        name: "combiaa",
        formula: "-cos²θ cos 3φ + |sin θ| sin θ sin 3φ",
        reference_r0: Some(1.25348),
        json: include_str!("../gallery/combiaa.json"),
    },
    GalleryEntry {
        name: "g1",
        formula: "-cos²θ cos 3φ",
        reference_r0: Some(1.0),
        json: include_str!("../gallery/g1.json"),
    },
    GalleryEntry {
        name: "g2",
        formula: "-cos²θ cos 3φ + sin²θ cos 3φ",
        reference_r0: Some(1.08867),
        json: include_str!("../gallery/g2.json"),
    },
    GalleryEntry {
        name: "g3",
        formula: "-cos²θ cos 3φ + sin²θ cos 5φ",
        reference_r0: Some(1.11693),
        json: include_str!("../gallery/g3.json"),
    },
    GalleryEntry {
        name: "g4",
        formula: "cos²θ cos 3φ + sin²θ cos 5φ",
        reference_r0: Some(1.0),
        json: include_str!("../gallery/g4.json"),
    },
    GalleryEntry {
        name: "g5",
        formula: "-cos²θ cos 5φ + sin²θ cos 5φ",
        reference_r0: Some(1.01954),
        json: include_str!("../gallery/g5.json"),
    },
    GalleryEntry {
        name: "g6",
        formula: "-cos²θ cos 5φ + |sin θ| sin θ sin 5φ",
        reference_r0: Some(1.1102),
        json: include_str!("../gallery/g6.json"),
    },
];

pub fn get(name: &str) -> Option<&'static GalleryEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
