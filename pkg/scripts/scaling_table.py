"""Print the FG_N scaling laws: exact roots next to their closed-form estimates."""
import argparse

from tailoredbeams import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=60)
    args = ap.parse_args()
    print(f"{'N':>3} {'C_N^2':>10} {'s exact':>9} {'s est':>9} {'sigma':>9} "
          f"{'sigma s^2':>9} {'th exact':>9} {'th est':>9}")
    for n, _, c2, s, s_est, sigma, th, th_est in cli.scaling_rows(args.nmax):
        print(f"{n:3d} {float(c2):10.4f} {s:9.5f} {s_est:9.5f} {float(sigma):9.4f} "
              f"{float(sigma) * s_est**2:9.5f} {th:9.5f} {th_est:9.5f}")


if __name__ == "__main__":
    main()
