import logging


class IntuitionSchedule:
    """Effective intuition loss coefficient over a training run.

    The configured coefficient fades linearly to zero over the first intuitionDecaySteps
    environment steps (0 keeps it constant), and is multiplied by intuitionSaturationDecay
    after every update whose agreement rate reached intuitionSaturation."""

    def __init__(self, config):
        self._coefficient = float(config.intuitionCoef)
        self._decaySteps = config.intuitionDecaySteps
        self._saturation = config.intuitionSaturation
        self._saturationDecay = config.intuitionSaturationDecay
        self._saturationFactor = 1.0
        self._saturatedUpdates = 0

    def coefficient(self, stepsDone):
        if self._coefficient == 0:
            return 0.0
        factor = self._saturationFactor
        if self._decaySteps > 0:
            factor *= max(0.0, 1.0 - stepsDone / float(self._decaySteps))
        return self._coefficient * factor

    def saturatedUpdates(self):
        return self._saturatedUpdates

    def observeAgreement(self, agreementRate):
        if agreementRate is None or agreementRate < self._saturation:
            return
        self._saturatedUpdates += 1
        self._saturationFactor *= self._saturationDecay
        logging.debug("Agreement %(agreement).3f reached saturation; intuition factor now %(factor).4f",
                      dict(agreement=agreementRate, factor=self._saturationFactor))
