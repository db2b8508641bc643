""" *******************************************************************************************************************
|
|  Name        :  mfgp_tasks.py
|  Project     :  mfgp_shm
|  Description :  Run DI extraction, GP / MF-GP fits, the three benchmark tasks, synthetic data generation and
|                 load-compensated signal reconstruction from a TOML experiment definition.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import argparse
import logging
import os
import sys
from rich import print
sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), 'lib'))
import mfgp_shm as mfgp


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


class MfgpTasks:

    """ MfgpTasks class """

    def __init__(self, config):

        """
        Main body of script.

        :param config:      Validated experiment configuration
        :type  config:      ExperimentConfig
        """

        logging.info("***** SCRIPT START ***************************************************")

        self.config = config

        print()
        print(f"Running task [bold]{config.task}[/bold] (seed {config.seed})")

        runner = mfgp.MfgpShm(config)
        self.result = runner.run()

        print("[green] - Success[/green]")
        print(f" - Results written to {self.result['run_dir']}")
        self.report()

        print()
        print("Done.")
        print()

        logging.info("***** SCRIPT COMPLETE*************************************************")

# ---------------------------------------------------------------------------------------------------------------------

    def report(self):

        """ Print the headline numbers of the finished task """

        if "rmse" in self.result:
            print(f" - RMSE {self.result['rmse']:.6g}, R^2 {self.result['r2']:.4g}")

        if "table" in self.result:
            for row in self.result["table"]:
                print(f"   {row.model:<22} exp sets {row.n_exp_sets:>3}  sim points {row.n_sim_points:>3}  "
                      f"RMSE {row.rmse:.6g}  R^2 {row.r2:.4g}")

        if "files" in self.result:
            print(f" - {len(self.result['files'])} file(s) written")

        if "records" in self.result:
            print(f" - {self.result['records']} reconstructed records, manifest {self.result['manifest']}")


def parse_args(argv):

    """
    Parse command-line arguments.

    :param argv:    Arguments after the program name
    :type  argv:    list

    :return:    Parsed arguments
    :rtype:     argparse.Namespace
    """

    default_conf = os.path.join(os.path.abspath(os.path.dirname(__file__)), 'conf', 'config.toml')

    parser = argparse.ArgumentParser(description="Multi-fidelity GP damage state estimation tasks")
    parser.add_argument("task", choices=mfgp.TaskName.ALL, help="Command to run")
    parser.add_argument("--config", default=default_conf, help="TOML experiment definition")
    parser.add_argument("--seed", type=int, default=None, help="Override the configured seed")
    parser.add_argument("--out", default=None, help="Override the configured output directory")

    return parser.parse_args(argv)


def fail(message, ex, code):
    logging.error(message)
    logging.error(ex)
    print()
    print(f"[red bold]{message}: {ex}[/red bold]")
    return code


def main(argv=None):

    """
    Run one task and translate library errors into exit codes.

    :return:    Exit code (0 success, 2 config error, 3 data error, 4 numerical failure)
    :rtype:     int
    """

    args = parse_args(sys.argv[1:] if argv is None else argv)

    try:
        config = mfgp.read_config_file(args.config)
        config = config.with_overrides(task=args.task, seed=args.seed, output_dir=args.out)
        config.validate()
    except mfgp.ConfigError as ex:
        return fail("Configuration error", ex, EXIT_CONFIG)

    try:
        MfgpTasks(config)
    except mfgp.ConfigError as ex:
        return fail("Configuration error", ex, EXIT_CONFIG)
    except mfgp.DataError as ex:
        return fail("Data error", ex, EXIT_DATA)
    except mfgp.InvalidArgument as ex:
        return fail("Invalid input", ex, EXIT_DATA)
    except mfgp.NumericalError as ex:
        return fail("Numerical failure", ex, EXIT_NUMERICAL)

    return EXIT_OK


#  Execute the script
if __name__ == "__main__":

    #  Specify settings For the log
    log_dir = os.path.join(os.path.abspath(os.path.dirname(__file__)), 'logs')
    os.makedirs(log_dir, exist_ok=True)
    logging.basicConfig(filename=os.path.join(log_dir, "MfgpTasks.log"), level=logging.DEBUG,
                        format='%(levelname)s:  %(asctime)s > %(message)s', datefmt='%m/%d/%Y %I:%M:%S %p')

    try:
        sys.exit(main())

    except KeyboardInterrupt:
        logging.info("KeyboardInterrupt detected.  Exiting...")
        print()
        print("KeyboardInterrupt detected.  Exiting...")
        print()
        sys.exit(0)


"""
   Copyright 2026 mfgp_shm contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at:

   http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
"""
