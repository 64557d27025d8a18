use rghw::hermitian::HermitianFamily;
use rghw::ramp::hermitian_profile_bound;
use rghw::SearchConfig;

/// `(μ1, [[t1, r1], [t2, r2], [t3, r3]])`
const PRINTED: [(i64, [[i64; 2]; 3]); 24] = [
    (5, [[58, 62], [62, 63], [63, 64]]),
    (8, [[55, 61], [59, 62], [62, 63]]),
    (9, [[54, 60], [58, 61], [61, 63]]),
    (10, [[53, 59], [57, 60], [60, 62]]),
    (12, [[51, 58], [57, 60], [59, 62]]),
    (13, [[50, 57], [54, 59], [58, 62]]),
    (14, [[49, 56], [53, 58], [56, 61]]),
    (15, [[48, 56], [52, 58], [55, 61]]),
    (16, [[47, 55], [51, 58], [54, 61]]),
    (19, [[44, 52], [48, 54], [51, 57]]),
    (20, [[43, 51], [47, 54], [50, 57]]),
    (24, [[39, 47], [43, 50], [46, 53]]),
    (53, [[11, 18], [14, 21], [17, 25]]),
    (57, [[7, 14], [10, 17], [13, 21]]),
    (58, [[7, 13], [10, 16], [12, 20]]),
    (61, [[3, 10], [6, 13], [9, 17]]),
    (62, [[3, 9], [6, 12], [8, 16]]),
    (63, [[3, 8], [6, 11], [8, 15]]),
    (65, [[2, 6], [5, 10], [7, 14]]),
    (66, [[2, 5], [4, 7], [6, 13]]),
    (67, [[2, 4], [4, 7], [5, 11]]),
    (70, [[1, 3], [3, 6], [4, 10]]),
    (71, [[1, 2], [2, 5], [3, 9]]),
    (75, [[0, 1], [1, 2], [2, 6]]),
];

const RESIDUAL: [i64; 38] = [
    17, 18, 21, 22, 23, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43,
    44, 45, 46, 47, 48, 49, 50, 51, 52, 54, 55, 56, 59, 60,
];

fn pairs(h: &HermitianFamily) -> Vec<(i64, i64)> {
    let hs = h.orders().h_star();
    (0..hs.len() - 2)
        .map(|s| (hs[s + 2], if s == 0 { -1 } else { hs[s - 1] }))
        .collect()
}

#[test]
fn the_sixty_two_pairs() {
    let h = HermitianFamily::new(4).unwrap();
    let p = pairs(&h);
    assert_eq!(p.len(), 62);
    assert_eq!(&p[..5], &[(5, -1), (8, 0), (9, 4), (10, 5), (12, 8)]);
    assert_eq!(
        &p[56..],
        &[(65, 61), (66, 62), (67, 63), (70, 65), (71, 66), (75, 67)]
    );
    for (mu1, mu2) in &p {
        assert_eq!(h.orders().dim(*mu1) - h.orders().dim(*mu2), 3);
    }
    let listed: Vec<i64> = PRINTED.iter().map(|x| x.0).chain(RESIDUAL).collect();
    let mut sorted = listed.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, p.iter().map(|x| x.0).collect::<Vec<_>>());
}

#[test]
fn printed_intervals() {
    let h = HermitianFamily::new(4).unwrap();
    let cfg = SearchConfig::default();
    for (mu1, mu2) in pairs(&h) {
        let Some((_, rows)) = PRINTED.iter().find(|x| x.0 == mu1) else {
            continue;
        };
        let (p, _) = hermitian_profile_bound(&h, mu1, mu2, &cfg).unwrap();
        for (m, want) in rows.iter().enumerate() {
            assert_eq!([p.t[m], p.r[m]], *want, "μ1={mu1} m={}", m + 1);
        }
    }
}

#[test]
fn residual_intervals() {
    let h = HermitianFamily::new(4).unwrap();
    let cfg = SearchConfig::default();
    for (mu1, mu2) in pairs(&h).into_iter().filter(|p| RESIDUAL.contains(&p.0)) {
        assert_eq!(mu2, mu1 - 3);
        let (p, _) = hermitian_profile_bound(&h, mu1, mu2, &cfg).unwrap();
        let k = 64 - mu1;
        assert_eq!(p.t, vec![k - 1, k + 3, k + 6], "μ1={mu1}");
        assert_eq!(p.r, vec![k + 7, k + 10, k + 14], "μ1={mu1}");
    }
}

#[test]
fn dual_pairs_are_reversed() {
    // C(μ2^(s))^⊥ = C(μ1^(63-s))
    let h = HermitianFamily::new(4).unwrap();
    let p = pairs(&h);
    for s in 1..=62 {
        let (_, mu2) = p[s - 1];
        let (mu1, _) = p[62 - s];
        assert_eq!(h.code(mu2).dual(), h.code(mu1), "s={s}");
    }
}
