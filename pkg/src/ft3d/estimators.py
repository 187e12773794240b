"""Estimator-style wrappers so the transforms compose with sklearn tooling.

Both classes follow the usual contract: parameters are stored verbatim in
``__init__`` (so ``get_params``/``set_params``/``clone`` work), ``fit``
returns ``self``, and fitted state lives in trailing-underscore attributes.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .fft3d import execute, plan
from .layout import TileConfig
from .perfmodel import BYTES_PER_SAMPLE, LANES, calibrate, predict_report
from .precision import PrecisionSpec


class StreamingFFT3D(TransformerMixin, BaseEstimator):
    """Forward/inverse 3D FFT as a transformer over n^3 complex grids.

    ``fit`` reads the grid edge off X and builds the immutable plan
    (twiddle tables, streaming schedule, tiling); ``transform`` runs the
    forward pipeline and ``inverse_transform`` the conjugate one.

    Parameters
    ----------
    precision : 'double' | 'single' | 'custom'
    mantissa_bits : int, required when precision='custom'
    tile : tile edge of the blocked plane transpose (must divide n)
    buffers : staging buffers in the plane transpose, >= 2
    threads : pencil-level worker threads per FFT phase
    """

    def __init__(self, precision="double", mantissa_bits=None, tile=8, buffers=2, threads=1):
        self.precision = precision
        self.mantissa_bits = mantissa_bits
        self.tile = tile
        self.buffers = buffers
        self.threads = threads

    def fit(self, X, y=None):
        spec = PrecisionSpec.from_flags(self.precision, self.mantissa_bits)
        cfg = TileConfig(tile=self.tile, buffers=self.buffers)
        self.plan_ = plan(X.shape[0], spec, cfg)
        return self

    def _check_fitted(self):
        if not hasattr(self, "plan_"):
            raise NotFittedError("call fit(X) before transforming")

    def transform(self, X):
        self._check_fitted()
        return execute(self.plan_, X, "forward", threads=self.threads)

    def inverse_transform(self, X):
        self._check_fitted()
        return execute(self.plan_, X, "inverse", threads=self.threads)


class PipelineLatencyModel(BaseEstimator):
    """Affine latency model fitted to measured kernel/transfer times.

    ``fit`` takes an iterable of :class:`~ft3d.perfmodel.Measurement`;
    ``predict`` returns predicted rows (milliseconds) for new sizes.
    """

    def __init__(self, lanes=LANES, bytes_per_sample=BYTES_PER_SAMPLE):
        self.lanes = lanes
        self.bytes_per_sample = bytes_per_sample

    def fit(self, measurements, y=None):
        result = calibrate(measurements, lanes=self.lanes, bytes_per_sample=self.bytes_per_sample)
        self.config_ = result.config
        self.kernel_residuals_ = result.kernel_residuals
        self.pcie_residuals_ = result.pcie_residuals
        return self

    def _check_fitted(self):
        if not hasattr(self, "config_"):
            raise NotFittedError("call fit(measurements) before predicting")

    def predict(self, sizes):
        self._check_fitted()
        return predict_report(sizes, self.config_)
