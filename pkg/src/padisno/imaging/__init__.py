"""Image-restoration building blocks: Haar wavelets, blur, noise, ISNR, PGM I/O."""

from .blur import (BlurOperator, add_gaussian_noise, add_salt_pepper,
                   blur_adjoint, blur_apply, gaussian_kernel, isnr)
from .haar import HaarTransform, haar_analyze, haar_synthesize
from .pgm import pgm_decode, pgm_encode, pgm_read, pgm_write
from .synthetic import synthetic_image

__all__ = [
    "BlurOperator", "HaarTransform", "add_gaussian_noise", "add_salt_pepper",
    "blur_adjoint", "blur_apply", "gaussian_kernel", "haar_analyze",
    "haar_synthesize", "isnr", "pgm_decode", "pgm_encode", "pgm_read",
    "pgm_write", "synthetic_image",
]
