//! Shared fixtures for the CLI integration tests.
//!
//! Not every test target uses every helper.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

/// Path of the compiled `toonskin` binary.
pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toonskin"))
}

pub fn run(args: &[&str], cwd: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

/// Writes an RGB PNG built from a per-pixel function.
pub fn write_rgb_png(path: &Path, w: u32, h: u32, f: impl Fn(u32, u32) -> (u8, u8, u8)) {
    let img = image::RgbImage::from_fn(w, h, |x, y| {
        let (r, g, b) = f(x, y);
        image::Rgb([r, g, b])
    });
    img.save(path).expect("png written");
}

/// Reads an 8-bit grayscale PNG back as raw bytes plus dimensions.
pub fn read_gray_png(path: &Path) -> (u32, u32, Vec<u8>) {
    let img = image::open(path).expect("png read").to_luma8();
    let (w, h) = img.dimensions();
    (w, h, img.into_raw())
}

/// One synthetic corpus figure: where it is, what color it is painted in
/// the original, and which annotation marker covers it.
struct Figure {
    name: &'static str,
    width: u32,
    height: u32,
    background: Box<dyn Fn(u32, u32) -> (u8, u8, u8)>,
    figure: Box<dyn Fn(u32, u32) -> bool>,
    color: (u8, u8, u8),
    marker: (u8, u8, u8),
}

fn disk(cx: i64, cy: i64, r: i64) -> impl Fn(u32, u32) -> bool {
    move |x, y| {
        let dx = i64::from(x) - cx;
        let dy = i64::from(y) - cy;
        dx * dx + dy * dy <= r * r
    }
}

/// Writes a deterministic five-pair corpus (original + `name.gt.png`) into
/// `dir`. Figures are skin-colored shapes on varied backgrounds, chosen so
/// method1, method2, and method3 detect strictly more of the corpus in that
/// order:
///
/// * `fig1` (180,140,100) passes all three methods,
/// * `fig2` (200,160,152) passes method2/method3 but not method1 (G <= B+10),
/// * `fig3` (190,185,120) passes only method3 (R <= G+10),
/// * `fig4` two disks passing all three,
/// * `fig5` noisy background, figure (230,170,130) passing all three.
///
/// Background colors never satisfy the annotation-marker rule, so the
/// painted ground truth is exactly the figure pixel set.
pub fn write_mini_corpus(dir: &Path) {
    // Simple deterministic generator for the noise background.
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut noise = Vec::new();
    for _ in 0..(80 * 80) {
        let v = next();
        let r = (v & 0x7F) as u8; // < 120, fails every method range
        let g = ((v >> 8) % 200) as u8;
        let b = 100 + ((v >> 16) % 156) as u8; // >= 100, never a marker
        noise.push((r, g, b));
    }

    let figures = [
        Figure {
            name: "fig1",
            width: 64,
            height: 64,
            background: Box::new(|_, _| (20, 40, 200)),
            figure: Box::new(disk(32, 32, 18)),
            color: (180, 140, 100),
            marker: (0, 255, 0),
        },
        Figure {
            name: "fig2",
            width: 48,
            height: 80,
            background: Box::new(|_, _| (128, 128, 128)),
            figure: Box::new(|x, y| (10..30).contains(&x) && (20..60).contains(&y)),
            color: (200, 160, 152),
            marker: (255, 255, 0),
        },
        Figure {
            name: "fig3",
            width: 100,
            height: 60,
            background: Box::new(|x, y| (((x * 2) % 256) as u8, ((100 + y) % 181) as u8, 150)),
            figure: Box::new(disk(50, 30, 15)),
            color: (190, 185, 120),
            marker: (0, 255, 0),
        },
        Figure {
            name: "fig4",
            width: 64,
            height: 64,
            background: Box::new(|_, _| (40, 20, 60)),
            figure: Box::new(move |x, y| disk(20, 20, 10)(x, y) || disk(44, 44, 10)(x, y)),
            color: (210, 160, 120),
            marker: (255, 255, 0),
        },
        Figure {
            name: "fig5",
            width: 80,
            height: 80,
            background: Box::new(move |x, y| noise[(y * 80 + x) as usize]),
            figure: Box::new(disk(40, 40, 22)),
            color: (230, 170, 130),
            marker: (0, 255, 0),
        },
    ];

    for fig in &figures {
        write_rgb_png(
            &dir.join(format!("{}.png", fig.name)),
            fig.width,
            fig.height,
            |x, y| {
                if (fig.figure)(x, y) {
                    fig.color
                } else {
                    (fig.background)(x, y)
                }
            },
        );
        write_rgb_png(
            &dir.join(format!("{}.gt.png", fig.name)),
            fig.width,
            fig.height,
            |x, y| {
                if (fig.figure)(x, y) {
                    fig.marker
                } else {
                    (fig.background)(x, y)
                }
            },
        );
    }
}
