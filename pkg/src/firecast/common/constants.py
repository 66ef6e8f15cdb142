"""Constants shared by several firecast packages."""

# Probability clamp applied inside binary cross-entropy
BCE_EPSILON = 1e-7

# Probability at or above which an image is labelled "fire"
FIRE_THRESHOLD = 0.5

# Reference architecture: 32x32 grayscale, 8 filters of 3x3, 2x2 pooling,
# dense widths 128 and 1
DEFAULT_INPUT_SHAPE = (32, 32, 1)
DEFAULT_FILTERS = 8
DEFAULT_KERNEL = 3
DEFAULT_POOL_WINDOW = 2
DEFAULT_HIDDEN_UNITS = 128

# Plain SGD defaults
DEFAULT_LEARNING_RATE = 0.01
DEFAULT_BATCH_SIZE = 16
DEFAULT_EPOCHS = 20

# Localizer and pipeline defaults
DEFAULT_QUANTILE = 0.99
DEFAULT_CAP = 10
WILDFIRE_CONCEPT_INDEX = 4

# Pixel values are scaled into [0, 1] before entering the network
PIXEL_SCALE = 255.0
MAX_PIXEL = 255

# Model file format version
MODEL_FILE_VERSION = 1

LABEL_FIRE = "fire"
LABEL_NO_FIRE = "no_fire"
