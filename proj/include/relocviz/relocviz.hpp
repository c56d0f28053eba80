#pragma once

#include "relocviz/arc_geometry.hpp"
#include "relocviz/color.hpp"
#include "relocviz/config.hpp"
#include "relocviz/dataset_io.hpp"
#include "relocviz/engine.hpp"
#include "relocviz/geometry.hpp"
#include "relocviz/scene.hpp"
#include "relocviz/styling.hpp"
#include "relocviz/vectorizer.hpp"
