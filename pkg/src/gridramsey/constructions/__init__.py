from .complete import (
    MAX_PRODUCT_VERTICES,
    MubayiColor,
    as_mubayi,
    auxiliary_color_graph,
    binary_coloring,
    mubayi_coloring,
    mubayi_parameters,
    product_partition,
)
from .grids import (
    ChromaticObstruction,
    asymmetric_grid,
    asymmetric_prime,
    grid_from_rows,
    is_prime,
    modular_sequences,
    random_grid,
    rows_from_grid,
)
from .hyper import (
    GridProviderError,
    default_grid_provider,
    f3_43_coloring,
    f3_56_coloring,
    grid_to_partite3,
    partite3_to_grid,
)
