import io
import mock
import os
import unittest
from intuitionrl import errors
from intuitionrl import main
from intuitionrl.bench import runreport
from intuitionrl.tests import common


def fakeReport(envName="cartpole", totalSteps=64):
    return runreport.RunReport(envName, 0, runreport.BASELINE, {}, common.curve([(totalSteps, 10.0)]),
                               totalSteps=totalSteps, finalEvalMean=10.0, finalEvalStd=1.0)


class Test(unittest.TestCase):
    def setUp(self):
        patcher = mock.patch("sys.stdout", new_callable=io.StringIO)
        self.stdout = patcher.start()
        self.addCleanup(patcher.stop)

    def test_TrainDefaults(self):
        args = main.parseArgs(["train", "--env", "cartpole"])
        self.assertEqual(args.command, "train")
        self.assertEqual(args.seed, 0)
        self.assertFalse(args.shire)
        self.assertIsNone(args.net)
        self.assertIsNone(args.steps)

    def test_BenchSeedsAndNets(self):
        args = main.parseArgs(["bench", "--env", "lander", "--net", "lander_basic", "--net",
                               "lander_antiparallel", "--seeds", "1,2,3", "--workers", "2"])
        self.assertEqual(args.seeds, [1, 2, 3])
        self.assertEqual(args.net, ["lander_basic", "lander_antiparallel"])
        self.assertEqual(args.workers, 2)

    def test_UsageErrors(self):
        for argv in [["train", "--env", "nosuch"], ["train"], ["bench", "--env", "taxi", "--seeds", "a,b"],
                     ["bench", "--env", "taxi", "--workers", "0"], ["eval", "--env", "taxi"], ["dance"],
                     ["train", "--env", "cartpole", "--steps", "-5"]]:
            with self.assertRaises(errors.UsageError):
                main.parseArgs(argv)
            self.assertEqual(main.main(argv), errors.EXIT_USAGE)

    def test_CountFlagsMustBePositive(self):
        for argv in [["train", "--env", "cartpole", "--evalEpisodes", "0"],
                     ["bench", "--env", "taxi", "--evalEpisodes", "-3"],
                     ["eval", "--env", "taxi", "--checkpoint", "policy.bin", "--episodes", "0"],
                     ["overhead", "--samples", "0"]]:
            with self.assertRaises(errors.UsageError):
                main.parseArgs(argv)
            self.assertEqual(main.main(argv), errors.EXIT_USAGE)

    @mock.patch("builtins.open", mock.mock_open(read_data="PPO: 3\n"))
    def test_SectionThatIsNotAMappingExitCode(self):
        self.assertEqual(main.main(["--configurationFile", "conf.yaml", "train", "--env", "cartpole"]),
                         errors.EXIT_CONFIGURATION)

    def test_InspectNetPrintsThePosterior(self):
        argv = ["inspect-net", "--net", "cartpole", "--given", "lean=right"]
        self.assertEqual(main.main(argv), errors.EXIT_OK)
        output = self.stdout.getvalue()
        self.assertIn("Intuition net size: 2 nodes", output)
        self.assertIn("push=push_left: 0.100000", output)
        self.assertIn("push=push_right: 0.900000", output)
        self.assertIn("Intuitive action: push_right", output)

    def test_InspectNetWithoutAssignment(self):
        self.assertEqual(main.main(["inspect-net", "--net", "lander_antiparallel.net"]), errors.EXIT_OK)
        self.assertIn("Intuition net size: 6 nodes", self.stdout.getvalue())
        self.assertNotIn("Intuitive action", self.stdout.getvalue())

    def test_InspectNetBadAssignments(self):
        self.assertEqual(main.main(["inspect-net", "--net", "cartpole", "--given", "lean"]),
                         errors.EXIT_USAGE)
        self.assertEqual(main.main(["inspect-net", "--net", "cartpole", "--given", "tilt=right"]),
                         errors.EXIT_USAGE)
        self.assertEqual(main.main(["inspect-net", "--net", "lander_basic", "--given", "a=positive"]),
                         errors.EXIT_USAGE)

    def test_ParseGiven(self):
        self.assertEqual(main.parseGiven("a=positive, theta=q2"), dict(a="positive", theta="q2"))
        with self.assertRaises(errors.UsageError):
            main.parseGiven("a=b=c")

    def test_UnknownNetIsAConfigurationError(self):
        self.assertEqual(main.main(["inspect-net", "--net", "nosuch"]), errors.EXIT_CONFIGURATION)

    def test_NetSearchPathEnvironmentVariable(self):
        with mock.patch.dict(os.environ, {"SHIRE_NET_PATH": common.FIXTURES_DIRECTORY}):
            self.assertEqual(main.resolveNetPath("badsum"),
                             os.path.join(common.FIXTURES_DIRECTORY, "badsum.net"))
            self.assertEqual(main.main(["inspect-net", "--net", "badsum"]), errors.EXIT_CONFIGURATION)
        with self.assertRaises(errors.ConfigurationError):
            main.resolveNetPath("badsum")

    def test_ResumeIsRefused(self):
        self.assertEqual(main.main(["train", "--env", "cartpole", "--resume", "runs/old"]), errors.EXIT_USAGE)

    @mock.patch.object(main.artifacts, "writeRun")
    @mock.patch.object(main.artifacts, "createRunDirectory", return_value="/somewhere/run")
    @mock.patch.object(main.trainer, "train")
    def test_ShireFlagLoadsTheDefaultNet(self, train, createRunDirectory, writeRun):
        train.return_value = (None, fakeReport())
        argv = ["train", "--env", "cartpole", "--shire", "--steps", "640", "--seed", "7"]
        self.assertEqual(main.main(argv), errors.EXIT_OK)
        envName, trainingConfig = train.call_args[0]
        self.assertEqual(envName, "cartpole")
        self.assertTrue(trainingConfig.intuitionEnabled)
        self.assertEqual(trainingConfig.totalSteps, 640)
        self.assertEqual(trainingConfig.seed, 7)
        self.assertEqual(train.call_args[1]["net"].name(), "cartpole")
        self.assertEqual(train.call_args[1]["criterion"].threshold(), 500.0)
        self.assertEqual(len(train.call_args[1]["netDigest"]), 64)
        createRunDirectory.assert_called_once_with("runs", 7)
        self.assertTrue(writeRun.called)
        self.assertIn("/somewhere/run: not solved after 64 steps", self.stdout.getvalue())

    @mock.patch.object(main.artifacts, "writeRun")
    @mock.patch.object(main.artifacts, "createRunDirectory", return_value="/somewhere/run")
    @mock.patch.object(main.trainer, "train")
    def test_NetFlagImpliesShire(self, train, createRunDirectory, writeRun):
        train.return_value = (None, fakeReport("lander"))
        argv = ["train", "--env", "lander", "--net", "lander_antiparallel"]
        self.assertEqual(main.main(argv), errors.EXIT_OK)
        self.assertTrue(train.call_args[0][1].intuitionEnabled)
        self.assertEqual(train.call_args[1]["net"].nodeCount(), 6)
        self.assertIsNone(train.call_args[1]["criterion"])

    @mock.patch.object(main.artifacts, "createRunDirectory", return_value="/somewhere/run")
    @mock.patch.object(main.trainer, "train", side_effect=errors.NumericalFailureError("Non-finite loss"))
    def test_NumericalFailureExitCode(self, train, createRunDirectory):
        self.assertEqual(main.main(["train", "--env", "cartpole"]), errors.EXIT_NUMERICAL)

    def test_MissingCheckpointExitCode(self):
        self.assertEqual(main.main(["eval", "--env", "cartpole", "--checkpoint", "/nonexistent/policy.bin"]),
                         errors.EXIT_IO)

    def test_MissingConfigurationFileExitCode(self):
        self.assertEqual(main.main(["--configurationFile", "/nonexistent/conf.yaml", "inspect-net", "--net",
                                    "cartpole"]), errors.EXIT_IO)


if __name__ == '__main__':
    unittest.main()
