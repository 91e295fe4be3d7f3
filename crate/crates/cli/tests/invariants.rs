use nlw_cli::checkpoint::{decode, encode};
use nlw_cli::diagnostics::{read_file, write_file};
use nlw_cli::parse_config;
use nlw_cli::sweep::{parse_value, with_axis};
use nlw_core::monitors::DiagnosticsRecord;
use nlw_core::radial_field::{make_grid, FieldState, RadialField, MIN_NODES};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = FieldState<f64>> {
    (MIN_NODES..40, 0.5f64..100.0, -1e3f64..1e3).prop_flat_map(|(n, r_max, t)| {
        (
            prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::ZERO, n),
            prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::ZERO, n),
        )
            .prop_map(move |(a, b)| {
                let g = make_grid(r_max, n).unwrap();
                FieldState::new(
                    t,
                    RadialField::from_phi(g, a).unwrap(),
                    RadialField::from_phi(g, b).unwrap(),
                )
                .unwrap()
            })
    })
}

fn record() -> impl Strategy<Value = DiagnosticsRecord<f64>> {
    let x = || prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO;
    (
        prop::collection::vec(x(), 12),
        prop::option::of(x()),
        prop::option::of(x()),
    )
        .prop_map(|(v, w_l4, w_l6)| DiagnosticsRecord {
            t: v[0],
            energy: v[1],
            energy_v: v[2],
            m1: v[3],
            m2: v[4],
            m3: v[5],
            modified_energy: v[6],
            weighted_l4: v[7],
            local_mass: v[8],
            local_energy: v[9],
            hs_half_u: v[10],
            hs_half_ut: v[11],
            w_l4,
            w_l6,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn checkpoints_round_trip_bit_exactly(st in state()) {
        let back = decode(&encode(&st)).unwrap();
        prop_assert_eq!(back.t.to_bits(), st.t.to_bits());
        prop_assert_eq!(back.grid(), st.grid());
        for (a, b) in back.u.phi().iter().chain(back.ut.phi()).zip(st.u.phi().iter().chain(st.ut.phi())) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn any_changed_byte_is_detected(st in state(), at in any::<prop::sample::Index>(), flip in 1u8..=255) {
        let mut bytes = encode(&st);
        let i = at.index(bytes.len());
        bytes[i] ^= flip;
        prop_assert!(decode(&bytes).is_err());
    }

    #[test]
    fn csv_rows_round_trip(recs in prop::collection::vec(record(), 0..8)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        write_file(&path, 1.0, &recs).unwrap();
        let (_, rows) = read_file(&path).unwrap();
        prop_assert_eq!(rows.len(), recs.len());
        for (row, r) in rows.iter().zip(&recs) {
            prop_assert_eq!(row[1].to_bits(), r.energy.to_bits());
            prop_assert_eq!(row[11].to_bits(), r.hs_half_ut.to_bits());
            match r.w_l6 {
                Some(x) => prop_assert_eq!(row[13].to_bits(), x.to_bits()),
                None => prop_assert!(row[13].is_nan()),
            }
        }
    }

    #[test]
    fn swept_floats_land_exactly(dt in 1e-6f64..4e-3) {
        let base = parse_config("name = \"p\"").unwrap();
        let sc = with_axis(&base, "solver.dt", &parse_value(&format!("{dt:e}"))).unwrap();
        prop_assert_eq!(sc.solver.dt, dt);
    }
}
