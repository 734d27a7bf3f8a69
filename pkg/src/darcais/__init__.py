"""d'Arcais numbers and their large-deviation asymptotics."""
