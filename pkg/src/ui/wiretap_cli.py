import click

from domain.coding import CodingRegime
from domain.models import DEFAULT_MAX_BYTES, DEFAULT_MAX_OUTCOMES
from domain.rates import Regime
from ui.common_functions import configure_logging, explicit_overrides, run_command

CONTEXT_SETTINGS = {"help_option_names": ["-h", "--help"]}
CHANNELS = click.Path(exists=True, dir_okay=False)


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--log-level",
    default="INFO",
    show_default=True,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
)
def main(log_level):
    """Secrecy rates, random codes and eavesdropper attacks for compound wiretap channels."""
    configure_logging(log_level)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option("--channels", "channels_path", required=True, type=CHANNELS, help="Channel file (JSON)")
@click.option("--regime", required=True, type=click.Choice([r.value for r in Regime]), help="Rate formula")
@click.option("--n", "n", multiple=True, type=int, help="Largest blocklength of the multiletter ladder")
@click.option("--grid", default=1000, show_default=True, type=int, help="Simplex grid resolution")
@click.option("--restarts", default=32, show_default=True, type=int, help="Multi-start restarts")
@click.option(
    "--aux-card",
    "--aux-cardinality",
    "aux_cardinality",
    default=None,
    type=int,
    help="|U| of the prefix channel [default: |A|+1]",
)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--max-outcomes", default=DEFAULT_MAX_OUTCOMES, show_default=True, type=int)
@click.option("--max-bytes", default=DEFAULT_MAX_BYTES, show_default=True, type=int, help="Largest single array")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="JSON report")
@click.pass_context
def capacity(ctx, **options):
    """Evaluate one secrecy-rate formula on a compound channel."""
    run_command(ctx, "capacity", **options)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option("--channels", "channels_path", required=True, type=CHANNELS, help="Channel file (JSON)")
@click.option("--regime", required=True, type=click.Choice([r.value for r in CodingRegime]), help="Coding regime")
@click.option("--n", "n", required=True, multiple=True, type=int, help="Blocklength; repeat for a sweep")
@click.option("--delta", default=None, type=float, help="Typicality slack (default 1/n)")
@click.option("--tau", default=0.1, show_default=True, type=float, help="Rate back-off")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--override-J", "--J", "override_messages", default=None, type=int, help="Message count override")
@click.option("--override-L", "--L", "override_randomisation", default=None, type=int, help="Randomisation override")
@click.option("--eta", default=None, type=float, help="Expurgation level (default: largest average error)")
@click.option("--inputs", default="uniform", show_default=True, type=click.Choice(["uniform", "optimized"]))
@click.option("--grid", default=1000, show_default=True, type=int, help="Simplex grid for optimized inputs")
@click.option("--max-outcomes", default=DEFAULT_MAX_OUTCOMES, show_default=True, type=int)
@click.option("--max-bytes", default=DEFAULT_MAX_BYTES, show_default=True, type=int, help="Largest single array")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="JSON report")
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False), help="Sweep rows")
@click.option("--codebook-out", "codebook_out_path", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def simulate(ctx, **options):
    """
    Sample a random code, decode it and measure its error and leakage exactly.

    The CSV has one row per --n with columns n, rate (log2 J / n), avg_error (worst
    state's average decoding error) and leakage (worst state's I(J; Z^n) in bits).
    """
    run_command(ctx, "simulate", **options)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option("--channels", "channels_path", required=True, type=CHANNELS, help="Channel file (JSON)")
@click.option("--codebook", "codebook_path", required=True, type=CHANNELS, help="Codebook written by simulate")
@click.option("--state", default=None, type=int, help="Index of the active state to attack (default: all)")
@click.option("--partitions", default=100, show_default=True, type=int, help="Random partitions to compare with")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--max-outcomes", default=DEFAULT_MAX_OUTCOMES, show_default=True, type=int)
@click.option("--max-bytes", default=DEFAULT_MAX_BYTES, show_default=True, type=int, help="Largest single array")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="JSON report")
@click.pass_context
def attack(ctx, **options):
    """Run the MAP decoding and identification attacks against a stored codebook."""
    run_command(ctx, "attack", **options)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option("--eta", default=None, type=float, help="Crossover of W_0 [default: 0.01]")
@click.option("--tau", default=None, type=float, help="Crossover from W_0 to V_0 [default: 0.05]")
@click.option("--tau-hat", default=None, type=float, help="Crossover from V_0 to W_1 [default: 0.45]")
@click.option("--nu", default=None, type=float, help="Rate back-off [default: 0.01]")
@click.option("--grid", default=1000, show_default=True, type=int)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="JSON report")
@click.pass_context
def example1(ctx, eta, tau, tau_hat, nu, grid, out_path):
    """Messages decodable while (message, randomisation) pairs exceed the compound capacity."""
    overrides = explicit_overrides(eta=eta, tau=tau, tau_hat=tau_hat, nu=nu)
    run_command(ctx, "example1", grid=grid, out_path=out_path, overrides=overrides)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option("--eta", default=None, type=float, help="Crossover of W_0 [default: 0.1]")
@click.option("--tau", default=None, type=float, help="Degrading crossover [default: 0.1]")
@click.option("--grid-points", default=None, type=int, help="Number of t values in [0, 1] [default: 21]")
@click.option("--lengths", multiple=True, type=int, help="Extension lengths of the converse check [default: 1 2]")
@click.option("--lattice-resolution", default=None, type=int, help="Input lattice step for n > 1 [default: 10]")
@click.option("--no-multiletter", is_flag=True, help="Skip the multi-letter rate ladder")
@click.option("--grid", default=1000, show_default=True, type=int)
@click.option("--restarts", default=32, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="JSON report")
@click.pass_context
def example2(ctx, eta, tau, grid_points, lengths, lattice_resolution, no_multiletter, grid, restarts, seed, out_path):
    """Positive secrecy rate with CSI, none without, on a convex family of binary symmetric channels."""
    overrides = explicit_overrides(
        eta=eta,
        tau=tau,
        grid_points=grid_points,
        lengths=list(lengths),
        lattice_resolution=lattice_resolution,
        multiletter=False if no_multiletter else None,
    )
    run_command(ctx, "example2", grid=grid, restarts=restarts, seed=seed, out_path=out_path, overrides=overrides)


if __name__ == "__main__":
    main()
