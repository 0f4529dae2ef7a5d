"""Small Monte-Carlo SNR sweep comparing the sphere decoder baseline with the
two-stage decoder, reproducing the complexity-reduction trend at desk scale.

The same run is available from the command line:

    mimo3d sweep --mod qpsk --snr-start 0 --snr-stop 12 --snr-step 4 \
        --trials 1500 --decoders sd-baseline,simplified,simplified-cs2 \
        --seed 1 --out sweep.csv
    mimo3d summarize --in sweep.csv
"""

from mimo3d import SweepConfig, run_sweep, summarize, write_csv

config = SweepConfig(
    modulation="qpsk",
    snr_start=0.0,
    snr_stop=12.0,
    snr_step=4.0,
    trials=1500,
    decoders=("sd-baseline", "simplified", "simplified-cs2"),
    seed=1,
)

rows, resamples = run_sweep(config)
write_csv(rows, "sweep.csv")
print(f"{len(rows)} rows written to sweep.csv ({resamples} resampled trials)\n")
print(summarize(rows))
