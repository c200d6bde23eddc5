import math
import unittest
import numpy as np
from intuitionrl import errors
from intuitionrl.envs import cartpole
from intuitionrl.envs import lander
from intuitionrl.envs import mountaincar
from intuitionrl.envs import registry
from intuitionrl.envs import taxi


class Test(unittest.TestCase):
    def test_CartPoleResetRange(self):
        env = cartpole.CartPole(0)
        for unused in range(2000):
            obs = env.reset()
            self.assertTrue(np.all(np.abs(obs) <= 0.05))

    def test_MountainCarResetRange(self):
        env = mountaincar.MountainCar(0)
        for unused in range(500):
            position, velocity = env.reset()
            self.assertTrue(-0.6 <= position <= -0.4)
            self.assertEqual(velocity, 0.0)

    def test_SameSeedSameStreams(self):
        for name in registry.names():
            first = registry.make(name, 11)
            second = registry.make(name, 11)
            self.assertTrue(np.array_equal(first.reset(), second.reset()))
            actions = np.random.default_rng(0).integers(first.spec().nActions, size=50)
            for action in actions:
                a = first.step(action)
                b = second.step(action)
                self.assertTrue(np.array_equal(a.obs, b.obs))
                self.assertEqual(a.reward, b.reward)
                if a.terminated or a.truncated:
                    break

    def test_CartPoleStepFromRestPushingRight(self):
        env = cartpole.CartPole(0)
        env.setState([0.0, 0.0, 0.0, 0.0])
        result = env.step(1)
        temp = 10.0 / 1.1
        thetaAcc = -temp / (0.5 * (4.0 / 3.0 - 0.1 / 1.1))
        xAcc = temp - 0.05 * thetaAcc / 1.1
        self.assertTrue(np.allclose(result.obs, [0.0, 0.02 * xAcc, 0.0, 0.02 * thetaAcc], rtol=1e-14, atol=0))
        self.assertLess(result.obs[3], 0)
        self.assertEqual(result.reward, 1.0)
        self.assertFalse(result.terminated)

    def test_CartPoleMirrorSymmetry(self):
        rng = np.random.default_rng(1)
        for unused in range(50):
            state = rng.uniform(-0.1, 0.1, size=4)
            env = cartpole.CartPole(0)
            env.setState(state)
            right = env.step(1).obs
            env.setState(-state)
            left = env.step(0).obs
            self.assertTrue(np.all(np.abs(right + left) <= 1e-12))

    def test_CartPoleEpisodeRewardEqualsLength(self):
        env = cartpole.CartPole(3)
        rng = np.random.default_rng(3)
        env.reset()
        total = 0.0
        steps = 0
        while True:
            result = env.step(int(rng.integers(2)))
            total += result.reward
            steps += 1
            if result.terminated or result.truncated:
                break
        self.assertEqual(total, steps)
        self.assertEqual(env.elapsedSteps(), steps)

    def test_StepAfterEpisodeEndIsAUsageError(self):
        env = cartpole.CartPole(0)
        env.setState([0.0, 0.0, 0.3, 0.0])
        self.assertTrue(env.step(0).terminated)
        with self.assertRaises(errors.UsageError):
            env.step(0)

    def test_StepBeforeResetIsAUsageError(self):
        with self.assertRaises(errors.UsageError):
            taxi.Taxi(0).step(0)

    def test_InvalidActionIsAUsageError(self):
        env = mountaincar.MountainCar(0)
        env.reset()
        with self.assertRaises(errors.UsageError):
            env.step(3)

    def test_MountainCarGravityFormula(self):
        env = mountaincar.MountainCar(0)
        env.setState([-0.5, 0.0])
        result = env.step(1)
        expected = -0.0025 * math.cos(-1.5)
        self.assertAlmostEqual(result.obs[1], expected, places=15)
        self.assertAlmostEqual(result.obs[1], -1.76843e-4, places=9)
        self.assertAlmostEqual(result.obs[0], -0.5 + expected, places=15)
        self.assertEqual(result.reward, -1.0)

    def test_MountainCarVelocityClip(self):
        env = mountaincar.MountainCar(0)
        env.setState([-1.0, 0.07])
        result = env.step(2)
        self.assertEqual(result.obs[1], 0.07)
        self.assertAlmostEqual(result.obs[0], -0.93, places=15)

    def test_MountainCarLeftWallStopsTheCar(self):
        env = mountaincar.MountainCar(0)
        env.setState([-1.19, -0.05])
        result = env.step(0)
        self.assertEqual(result.obs[0], -1.2)
        self.assertEqual(result.obs[1], 0.0)

    def test_MountainCarWithoutPushingTruncatesAtMinus200(self):
        env = mountaincar.MountainCar(0)
        env.reset()
        env.setState([-0.5, 0.0])
        total = 0.0
        for step in range(200):
            result = env.step(1)
            total += result.reward
            position, velocity = result.obs
            self.assertTrue(-1.2 <= position <= 0.6)
            self.assertTrue(-0.07 <= velocity <= 0.07)
            self.assertFalse(result.terminated)
            self.assertEqual(result.truncated, step == 199)
        self.assertEqual(total, -200.0)
        self.assertTrue(env.isDone())

    def test_MountainCarReachingTheGoalTerminates(self):
        env = mountaincar.MountainCar(0)
        env.setState([0.49, 0.02])
        result = env.step(2)
        self.assertTrue(result.terminated)
        self.assertFalse(result.truncated)

    def test_LanderMainEngineUprightHasNoHorizontalEffect(self):
        env = lander.Lander(0)
        env.setState([0.0, 5.0, 0.0, 0.0, 0.0, 0.0])
        result = env.step(lander.FIRE_MAIN)
        self.assertEqual(result.obs[2], 0.0)
        self.assertAlmostEqual(result.obs[3], (3.0 - 1.625) * 0.02, places=15)

    def test_LanderFreeFall(self):
        env = lander.Lander(0)
        env.setState([0.0, 10.0, 0.0, 0.0, 0.0, 0.0])
        for unused in range(10):
            result = env.step(lander.NOOP)
        self.assertAlmostEqual(result.obs[3], -1.625 * 10 * 0.02, places=12)
        self.assertEqual(result.obs[2], 0.0)

    def test_LanderMirrorSymmetry(self):
        rng = np.random.default_rng(2)
        mirror = np.array([-1.0, 1.0, -1.0, 1.0, -1.0, -1.0])
        for unused in range(20):
            state = np.array([rng.uniform(-3, 3), rng.uniform(3, 8), rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)])
            left = lander.Lander(0)
            right = lander.Lander(0)
            left.setState(state)
            right.setState(state * mirror)
            for unused in range(5):
                a = left.step(lander.FIRE_LEFT)
                b = right.step(lander.FIRE_RIGHT)
                self.assertTrue(np.all(np.abs(a.obs[:6] - b.obs[:6] * mirror) <= 1e-12))
                self.assertAlmostEqual(a.reward, b.reward, places=9)

    def test_LanderShapingTelescopes(self):
        env = lander.Lander(4)
        rng = np.random.default_rng(4)
        env.reset()
        initial = lander.Lander.potential(env.state())
        shaping = 0.0
        while True:
            result = env.step(int(rng.integers(4)))
            shaping += result.info["shaping"]
            if result.terminated or result.truncated:
                break
        final = lander.Lander.potential(env.state())
        self.assertLessEqual(abs(shaping - (final - initial)), 1e-7)

    def test_LanderLegContacts(self):
        env = lander.Lander(0)
        env.setState([0.0, 0.2, 0.0, 0.0, 0.5, 0.0])
        obs = env.observation()
        self.assertEqual(obs[6], 1.0)
        self.assertEqual(obs[7], 0.0)

    def test_LanderSoftLanding(self):
        env = lander.Lander(0)
        env.setState([0.0, 0.001, 0.0, -0.1, 0.0, 0.0])
        result = env.step(lander.NOOP)
        self.assertTrue(result.terminated)
        self.assertTrue(result.info["landed"])
        self.assertGreater(result.reward, 0.0)

    def test_LanderCrash(self):
        env = lander.Lander(0)
        env.setState([3.0, 0.01, 0.0, -2.0, 0.0, 0.0])
        result = env.step(lander.NOOP)
        self.assertTrue(result.terminated)
        self.assertFalse(result.info["landed"])
        self.assertLess(result.reward, -50.0)

    def test_LanderLeavingTheArenaTerminates(self):
        env = lander.Lander(0)
        env.setState([9.999, 5.0, 1.0, 0.0, 0.0, 0.0])
        self.assertTrue(env.step(lander.NOOP).terminated)

    def test_TaxiCodec(self):
        self.assertEqual(taxi.encode(0, 0, 0, 0), 0)
        self.assertEqual(taxi.encode(3, 1, 2, 0), 328)
        codes = set()
        for code in range(taxi.N_STATES):
            decoded = taxi.decode(code)
            self.assertEqual(taxi.encode(*decoded), code)
            codes.add(decoded)
        self.assertEqual(len(codes), 500)

    def test_TaxiCodecRejectsOutOfRange(self):
        with self.assertRaises(errors.UsageError):
            taxi.encode(5, 0, 0, 0)
        with self.assertRaises(errors.UsageError):
            taxi.encode(0, 0, 5, 0)
        with self.assertRaises(errors.UsageError):
            taxi.decode(500)
        with self.assertRaises(errors.UsageError):
            taxi.decode(-1)

    def test_TaxiPickup(self):
        env = taxi.Taxi(0)
        env.setState((0, 0, 0, 1))
        result = env.step(taxi.PICKUP)
        self.assertEqual(result.reward, -1.0)
        self.assertEqual(env.state(), (0, 0, taxi.IN_TAXI, 1))

    def test_TaxiIllegalPickupAndDropoff(self):
        env = taxi.Taxi(0)
        env.setState((2, 2, 0, 1))
        result = env.step(taxi.PICKUP)
        self.assertEqual(result.reward, -10.0)
        self.assertEqual(env.state(), (2, 2, 0, 1))
        result = env.step(taxi.DROPOFF)
        self.assertEqual(result.reward, -10.0)
        self.assertEqual(env.state(), (2, 2, 0, 1))
        self.assertFalse(result.terminated)

    def test_TaxiDelivery(self):
        env = taxi.Taxi(0)
        env.setState((0, 4, taxi.IN_TAXI, 1))
        result = env.step(taxi.DROPOFF)
        self.assertEqual(result.reward, 20.0)
        self.assertTrue(result.terminated)

    def test_TaxiWalls(self):
        env = taxi.Taxi(0)
        env.setState((0, 1, 0, 1))
        env.step(taxi.EAST)
        self.assertEqual(env.state()[:2], (0, 1))
        env.setState((0, 2, 0, 1))
        env.step(taxi.WEST)
        self.assertEqual(env.state()[:2], (0, 2))
        env.setState((2, 1, 0, 1))
        env.step(taxi.EAST)
        self.assertEqual(env.state()[:2], (2, 2))

    def test_TaxiInitialStates(self):
        env = taxi.Taxi(5)
        for unused in range(300):
            row, col, passenger, destination = taxi.decode(env.reset()[0])
            self.assertLess(passenger, taxi.IN_TAXI)
            self.assertNotEqual(passenger, destination)

    def test_TaxiFeaturesAreOneHot(self):
        features = taxi.Taxi.SPEC.featurize(np.array([[0.0], [328.0]]))
        self.assertEqual(features.shape, (2, 500))
        self.assertEqual(features[1, 328], 1.0)
        self.assertEqual(features.sum(), 2.0)

    def test_UnknownEnvironmentListsValidNames(self):
        with self.assertRaises(errors.ConfigurationError) as context:
            registry.make("nosuch")
        self.assertIn("cartpole", str(context.exception))


if __name__ == '__main__':
    unittest.main()
