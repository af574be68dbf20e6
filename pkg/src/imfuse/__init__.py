"""Grayscale image fusion with Laplacian pyramids and Haar wavelets."""

from .fusion import DetailRule, FusionConfig, Method, fuse, fuse_laplacian, fuse_wavelet
from .metrics import MetricsReport, mse, nae, psnr
from .pyramid import Kernel5, expand, gaussian_pyramid, laplacian_pyramid, reconstruct, reduce
from .raster import box_blur, load_image, read_pgm, save_image, write_pgm
from .wavelet import WaveletDecomposition, dwt2, idwt2

__version__ = "0.1.0"
