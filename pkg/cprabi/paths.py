import os

package_dir = os.path.dirname(os.path.realpath(__file__))

data_dir = os.path.join(package_dir, "data")
default_species_path = os.path.join(data_dir, "rb87.json")
