//! Step-by-step color-difference formulas used as test oracles.
//!
//! Written directly from the CIE definitions, in degrees throughout, and
//! sharing no code with the library.

#![allow(dead_code)]

pub type Lab = (f64, f64, f64);

pub fn cie76(p: Lab, q: Lab) -> f64 {
    let dl = q.0 - p.0;
    let da = q.1 - p.1;
    let db = q.2 - p.2;
    (dl * dl + da * da + db * db).sqrt()
}

/// CIE94 with reference chroma taken from the first color.
pub fn cie94(p: Lab, q: Lab, kl: f64, kc: f64, kh: f64, k1: f64, k2: f64) -> f64 {
    let c1 = p.1.hypot(p.2);
    let c2 = q.1.hypot(q.2);
    let dl = p.0 - q.0;
    let dc = c1 - c2;
    let da = p.1 - q.1;
    let db = p.2 - q.2;
    let dh_sq = da * da + db * db - dc * dc;
    let sl = 1.0;
    let sc = 1.0 + k1 * c1;
    let sh = 1.0 + k2 * c1;
    let t1 = dl / (kl * sl);
    let t2 = dc / (kc * sc);
    let t3_sq = dh_sq.max(0.0) / ((kh * sh) * (kh * sh));
    (t1 * t1 + t2 * t2 + t3_sq).sqrt()
}

fn deg_sin(d: f64) -> f64 {
    (d * std::f64::consts::PI / 180.0).sin()
}

fn deg_cos(d: f64) -> f64 {
    (d * std::f64::consts::PI / 180.0).cos()
}

fn deg_atan2(y: f64, x: f64) -> f64 {
    let h = y.atan2(x) * 180.0 / std::f64::consts::PI;
    if h < 0.0 {
        h + 360.0
    } else {
        h
    }
}

pub fn ciede2000(p: Lab, q: Lab, kl: f64, kc: f64, kh: f64) -> f64 {
    let (l1, a1, b1) = p;
    let (l2, a2, b2) = q;

    // Step 1: a' rescaling, C', h'.
    let c1_ab = (a1 * a1 + b1 * b1).sqrt();
    let c2_ab = (a2 * a2 + b2 * b2).sqrt();
    let c_bar = (c1_ab + c2_ab) / 2.0;
    let c_bar7 = c_bar.powi(7);
    let g = 0.5 * (1.0 - (c_bar7 / (c_bar7 + 25f64.powi(7))).sqrt());
    let a1p = (1.0 + g) * a1;
    let a2p = (1.0 + g) * a2;
    let c1p = (a1p * a1p + b1 * b1).sqrt();
    let c2p = (a2p * a2p + b2 * b2).sqrt();
    let h1p = if a1p == 0.0 && b1 == 0.0 { 0.0 } else { deg_atan2(b1, a1p) };
    let h2p = if a2p == 0.0 && b2 == 0.0 { 0.0 } else { deg_atan2(b2, a2p) };

    // Step 2: differences.
    let dlp = l2 - l1;
    let dcp = c2p - c1p;
    let dhp = if c1p * c2p == 0.0 {
        0.0
    } else if (h2p - h1p).abs() <= 180.0 {
        h2p - h1p
    } else if h2p - h1p > 180.0 {
        h2p - h1p - 360.0
    } else {
        h2p - h1p + 360.0
    };
    let d_hp = 2.0 * (c1p * c2p).sqrt() * deg_sin(dhp / 2.0);

    // Step 3: weighting functions.
    let lbar = (l1 + l2) / 2.0;
    let cbarp = (c1p + c2p) / 2.0;
    let hbarp = if c1p * c2p == 0.0 {
        h1p + h2p
    } else if (h1p - h2p).abs() <= 180.0 {
        (h1p + h2p) / 2.0
    } else if h1p + h2p < 360.0 {
        (h1p + h2p + 360.0) / 2.0
    } else {
        (h1p + h2p - 360.0) / 2.0
    };
    let t = 1.0 - 0.17 * deg_cos(hbarp - 30.0)
        + 0.24 * deg_cos(2.0 * hbarp)
        + 0.32 * deg_cos(3.0 * hbarp + 6.0)
        - 0.20 * deg_cos(4.0 * hbarp - 63.0);
    let d_theta = 30.0 * (-((hbarp - 275.0) / 25.0).powi(2)).exp();
    let cbarp7 = cbarp.powi(7);
    let rc = 2.0 * (cbarp7 / (cbarp7 + 25f64.powi(7))).sqrt();
    let lm50 = (lbar - 50.0) * (lbar - 50.0);
    let sl = 1.0 + 0.015 * lm50 / (20.0 + lm50).sqrt();
    let sc = 1.0 + 0.045 * cbarp;
    let sh = 1.0 + 0.015 * cbarp * t;
    let rt = -deg_sin(2.0 * d_theta) * rc;

    let tl = dlp / (kl * sl);
    let tc = dcp / (kc * sc);
    let th = d_hp / (kh * sh);
    (tl * tl + tc * tc + th * th + rt * tc * th).sqrt()
}

/// Published CIEDE2000 reference pairs (Sharma, Wu and Dalal) with their
/// expected differences to four decimals.
pub const SHARMA_PAIRS: [(Lab, Lab, f64); 34] = [
    ((50.0, 2.6772, -79.7751), (50.0, 0.0, -82.7485), 2.0425),
    ((50.0, 3.1571, -77.2803), (50.0, 0.0, -82.7485), 2.8615),
    ((50.0, 2.8361, -74.0200), (50.0, 0.0, -82.7485), 3.4412),
    ((50.0, -1.3802, -84.2814), (50.0, 0.0, -82.7485), 1.0000),
    ((50.0, -1.1848, -84.8006), (50.0, 0.0, -82.7485), 1.0000),
    ((50.0, -0.9009, -85.5211), (50.0, 0.0, -82.7485), 1.0000),
    ((50.0, 0.0, 0.0), (50.0, -1.0, 2.0), 2.3669),
    ((50.0, -1.0, 2.0), (50.0, 0.0, 0.0), 2.3669),
    ((50.0, 2.4900, -0.0010), (50.0, -2.4900, 0.0009), 7.1792),
    ((50.0, 2.4900, -0.0010), (50.0, -2.4900, 0.0010), 7.1792),
    ((50.0, 2.4900, -0.0010), (50.0, -2.4900, 0.0011), 7.2195),
    ((50.0, 2.4900, -0.0010), (50.0, -2.4900, 0.0012), 7.2195),
    ((50.0, -0.0010, 2.4900), (50.0, 0.0009, -2.4900), 4.8045),
    ((50.0, -0.0010, 2.4900), (50.0, 0.0010, -2.4900), 4.8045),
    ((50.0, -0.0010, 2.4900), (50.0, 0.0011, -2.4900), 4.7461),
    ((50.0, 2.5, 0.0), (50.0, 0.0, -2.5), 4.3065),
    ((50.0, 2.5, 0.0), (73.0, 25.0, -18.0), 27.1492),
    ((50.0, 2.5, 0.0), (61.0, -5.0, 29.0), 22.8977),
    ((50.0, 2.5, 0.0), (56.0, -27.0, -3.0), 31.9030),
    ((50.0, 2.5, 0.0), (58.0, 24.0, 15.0), 19.4535),
    ((50.0, 2.5, 0.0), (50.0, 3.1736, 0.5854), 1.0000),
    ((50.0, 2.5, 0.0), (50.0, 3.2972, 0.0), 1.0000),
    ((50.0, 2.5, 0.0), (50.0, 1.8634, 0.5757), 1.0000),
    ((50.0, 2.5, 0.0), (50.0, 3.2592, 0.3350), 1.0000),
    ((60.2574, -34.0099, 36.2677), (60.4626, -34.1751, 39.4387), 1.2644),
    ((63.0109, -31.0961, -5.8663), (62.8187, -29.7946, -4.0864), 1.2630),
    ((61.2901, 3.7196, -5.3901), (61.4292, 2.2480, -4.9620), 1.8731),
    ((35.0831, -44.1164, 3.7933), (35.0232, -40.0716, 1.5901), 1.8645),
    ((22.7233, 20.0904, -46.6940), (23.0331, 14.9730, -42.5619), 2.0373),
    ((36.4612, 47.8580, 18.3852), (36.2715, 50.5065, 21.2231), 1.4146),
    ((90.8027, -2.0831, 1.4410), (91.1528, -1.6435, 0.0447), 1.4441),
    ((90.9257, -0.5406, -0.9208), (88.6381, -0.8985, -0.7239), 1.5381),
    ((6.7747, -0.2908, -2.4247), (5.8714, -0.0985, -2.2286), 0.6377),
    ((2.0776, 0.0795, -1.1350), (0.9033, -0.0636, -0.5514), 0.9082),
];
