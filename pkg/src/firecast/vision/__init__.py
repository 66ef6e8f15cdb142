"""Image container and bright-pixel fire localizer."""

from firecast.vision.image import GrayImage
from firecast.vision.localizer import bounding_box, detect_fire, threshold_bright

__all__ = ["GrayImage", "bounding_box", "detect_fire", "threshold_bright"]
