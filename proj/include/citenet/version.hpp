#pragma once

#define CITENET_VERSION "0.1.0"
