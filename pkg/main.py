from prospecies_entry import create_cli

# creating the command group
cli = create_cli()

if __name__ == "__main__":
    cli()
