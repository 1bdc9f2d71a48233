use std::collections::HashSet;

use lifedens::constructions::{gallery, gallery_names, generate, registry, STILL_LIFE_FIGURES};
use lifedens::io::{parse_pattern, write_grid, write_torus, PatternFile};
use lifedens::rational::ratio;
use lifedens::rules::{
    interior_max_degree, interior_still_life_check, is_still_life, oscillator_period, oscillator_phases,
    phase_average_density, DEFAULT_MAX_STEPS,
};
use lifedens::Neighborhood;

#[test]
fn still_life_figures_pass_interior_check() {
    for name in STILL_LIFE_FIGURES {
        let g = gallery(name).unwrap();
        let rep = interior_still_life_check(&g.grid).unwrap();
        assert!(rep.is_still_life(), "{name}: {rep:?}");
        if let Some(t) = &g.torus {
            assert!(is_still_life(t).unwrap(), "{name}");
            assert_eq!(t.density(), ratio(1, 2), "{name}");
        }
    }
}

#[test]
fn moore_figures_have_the_stated_degree() {
    let m = Neighborhood::moore8();
    for n in [0usize, 1, 2, 4, 5, 6, 7, 8] {
        let g = gallery(&format!("moore_n{n}")).unwrap();
        assert_eq!(interior_max_degree(&g.grid, &m).unwrap(), Some(n), "n={n}");
    }
    let alt = gallery("moore_n4_alt").unwrap();
    assert_eq!(interior_max_degree(&alt.grid, &m).unwrap(), Some(4));
    let t = alt.torus.unwrap();
    assert_eq!(t.max_degree(&m).unwrap(), 4);
    assert_eq!(t.density(), ratio(3, 5));
    let cw = gallery("chicken_wire").unwrap().torus.unwrap();
    assert_eq!(cw.max_degree(&m).unwrap(), 3);
    assert_eq!(cw.max_degree(&Neighborhood::von_neumann4()).unwrap(), 1);
}

#[test]
fn von_neumann_figures_have_the_stated_degree() {
    let v = Neighborhood::von_neumann4();
    // The printed chicken-wire grid contains runs of three, which have two
    // orthogonal neighbors; the pure 2-run chicken wire is the degree-1 one.
    for (name, n) in [("vn4_n0", 0), ("vn4_n1_chicken_wire", 2), ("vn4_n2", 2), ("vn4_n3", 3), ("vn4_n4", 4)] {
        let g = gallery(name).unwrap();
        assert_eq!(interior_max_degree(&g.grid, &v).unwrap(), Some(n), "{name}");
    }
}

#[test]
fn perturbed_figure() {
    let g = gallery("fig5b_perturbed").unwrap();
    let t = g.torus.unwrap();
    assert_eq!(t.max_degree(&Neighborhood::moore8()).unwrap(), 4);
    assert_eq!(t.density(), ratio(3, 5));
    // A degree-4 pattern: some cell is crowded, so condition 3 fails.
    assert!(!interior_still_life_check(&g.grid).unwrap().cond3());
    assert_eq!(interior_max_degree(&g.grid, &Neighborhood::moore8()).unwrap(), Some(4));
}

#[test]
fn oscillators() {
    let blinker = generate("blinker", &[]).unwrap();
    assert_eq!(oscillator_period(&blinker, DEFAULT_MAX_STEPS).unwrap(), Some(2));
    assert_eq!(phase_average_density(&blinker).unwrap(), ratio(3, 25));

    let vb = generate("venetian_blinds", &[]).unwrap();
    assert_eq!(oscillator_period(&vb, DEFAULT_MAX_STEPS).unwrap(), Some(2));
    assert_eq!(phase_average_density(&vb).unwrap(), ratio(1, 2));

    let b6 = generate("blinds6", &[]).unwrap();
    assert_eq!(oscillator_period(&b6, DEFAULT_MAX_STEPS).unwrap(), Some(6));
    let phases = oscillator_phases(&b6, DEFAULT_MAX_STEPS).unwrap();
    assert_eq!(phases.len(), 6);
    assert_eq!(phases.iter().filter(|p| p.density() == ratio(3, 4)).count(), 2);
    assert_eq!(phases.iter().map(|p| p.density()).max().unwrap(), ratio(3, 4));
    assert_eq!(phase_average_density(&b6).unwrap(), ratio(5, 12));

    let wire = gallery("lightspeed_wire7").unwrap().torus.unwrap();
    assert_eq!(oscillator_period(&wire, DEFAULT_MAX_STEPS).unwrap(), Some(7));
    assert_eq!(wire.max_degree(&Neighborhood::moore8()).unwrap(), 4);

    for c in registry() {
        if let Some(period) = c.expected_period {
            let p = generate(&c.name, &c.params).unwrap();
            assert_eq!(oscillator_period(&p, DEFAULT_MAX_STEPS).unwrap(), Some(period), "{}", c.name);
        }
    }
}

#[test]
fn gallery_files_round_trip() {
    for name in gallery_names() {
        let g = gallery(name).unwrap();
        match parse_pattern(&write_grid(&g.grid)).unwrap() {
            PatternFile::Grid(back) => assert_eq!(back, g.grid, "{name}"),
            PatternFile::Torus(_) => panic!("{name}: grid read back as torus"),
        }
        if let Some(t) = g.torus {
            match parse_pattern(&write_torus(&t)).unwrap() {
                PatternFile::Torus(back) => assert_eq!(back, t, "{name}"),
                PatternFile::Grid(_) => panic!("{name}: torus read back as grid"),
            }
        }
    }
}

type Cells = HashSet<(i64, i64)>;

/// Reads an offset-row hexagonal picture: even rows are shifted right by
/// half a cell. Returns the live cells and all cells in the window, in
/// coordinates where the six neighbors are ±(1,0), ±(0,1), ±(1,1).
fn read_hex(text: &str) -> (Cells, Cells) {
    let mut live = HashSet::new();
    let mut all = HashSet::new();
    for (r, line) in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('!')).enumerate() {
        let r = r as i64;
        let body = if r % 2 == 0 { line.strip_prefix(' ').unwrap_or(line) } else { line };
        for (c, ch) in body.chars().enumerate() {
            let c = c as i64;
            let a = if r % 2 == 0 { c + r / 2 } else { c + (r - 1) / 2 };
            all.insert((a, r));
            if ch != '.' {
                live.insert((a, r));
            }
        }
    }
    (live, all)
}

#[test]
fn triangular_pictures_have_the_stated_degree() {
    let files = [
        (include_str!("data/tri_n0.hex"), 0),
        (include_str!("data/tri_n1.hex"), 1),
        (include_str!("data/tri_n2.hex"), 2),
        (include_str!("data/tri_n2_alt.hex"), 2),
        (include_str!("data/tri_n3.hex"), 3),
        (include_str!("data/tri_n4.hex"), 4),
        (include_str!("data/tri_n4_alt.hex"), 4),
        (include_str!("data/tri_n5.hex"), 5),
        (include_str!("data/tri_n6.hex"), 6),
    ];
    let offs = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
    for (text, n) in files {
        let (live, all) = read_hex(text);
        let mut best = None;
        for &(a, b) in &live {
            if offs.iter().all(|(da, db)| all.contains(&(a + da, b + db))) {
                let d = offs.iter().filter(|(da, db)| live.contains(&(a + da, b + db))).count();
                best = best.max(Some(d));
            }
        }
        assert_eq!(best, Some(n), "tri n={n}");
    }
}
